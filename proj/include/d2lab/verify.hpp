#pragma once

// Replays the published countermodel claims against the fixture matrices.
// Disagreements are data (findings), not errors.

#include <string>
#include <vector>

#include "d2lab/fixtures.hpp"
#include "d2lab/matrix.hpp"

namespace d2lab {

struct Finding {
  std::string subject;      // e.g. "P1/C1", "DDK13"
  std::string expected;     // what the published claim implies
  std::string computed;     // what was found
  std::string certificate;  // witness assignment or countermodel, human-readable
};

inline std::string format_assignment(const Assignment& a) {
  std::string out;
  for (const auto& [name, v] : a) {
    if (!out.empty()) out += ", ";
    out += name + "=" + std::to_string(v);
  }
  return out;
}

/// Re-evaluates a reported counterexample with the tree-walking evaluator.
inline bool witness_reproduces(const Matrix& m, const Formula& scheme, const Counterexample& cx) {
  const Value v = eval(m, scheme, cx.witness);
  return v == cx.value && !m.is_designated(v);
}

struct ClaimRecord {
  PublishedClaim claim;
  ValidationReport validation;  // system check; `refutations` holds the target
  std::vector<Finding> findings;

  const AxiomResult& target() const { return validation.refutations.front(); }
  bool target_refuted() const { return !target().check.passed(); }
  bool system_validated() const { return validation.all_axioms_pass() && validation.mp.passed(); }
  bool confirmed() const { return findings.empty(); }
};

inline ClaimRecord verify_claim(const PublishedClaim& claim) {
  const Matrix m = fixture_matrix(claim.matrix_id);
  const AxiomSystem& sys = axiom_system(claim.system_id);
  const auto target = find_axiom(claim.target_id);
  ClaimRecord rec{claim, check_system(m, sys, claim.matrix_id, {*target}), {}};

  for (const auto& r : rec.validation.axioms) {
    if (r.check.passed()) continue;
    const auto& cx = *r.check.failure;
    const bool reproduced = witness_reproduces(m, sys.find(r.axiom_id)->scheme, cx);
    rec.findings.push_back({claim.matrix_id + "/" + r.axiom_id,
                            claim.matrix_id + " validates " + r.axiom_id + " (system " + sys.id + ")",
                            std::string("refuted: value ") + std::to_string(cx.value) + " is not designated" +
                                (reproduced ? "" : " [witness NOT reproduced]"),
                            format_assignment(cx.witness)});
  }
  if (!rec.validation.mp.passed()) {
    const auto [a, b] = *rec.validation.mp.failure;
    rec.findings.push_back({claim.matrix_id + "/MP", claim.matrix_id + " is closed under modus ponens",
                            "not closed", "a=" + std::to_string(a) + ", b=" + std::to_string(b)});
  }
  if (rec.target_refuted()) {
    const auto& cx = *rec.target().check.failure;
    if (!witness_reproduces(m, target->scheme, cx))
      rec.findings.push_back({claim.matrix_id + "/" + claim.target_id, "witness reproduces",
                              "tree-walking evaluation disagrees", format_assignment(cx.witness)});
  } else {
    rec.findings.push_back({claim.matrix_id + "/" + claim.target_id,
                            claim.matrix_id + " refutes " + claim.target_id, "validated", "exhaustive check"});
  }
  return rec;
}

inline std::vector<ClaimRecord> verify_published_claims() {
  std::vector<ClaimRecord> out;
  for (const auto& claim : published_claims()) out.push_back(verify_claim(claim));
  return out;
}

}  // namespace d2lab
