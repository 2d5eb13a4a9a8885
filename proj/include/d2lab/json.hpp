#pragma once

// nlohmann/json serialization of adjudication results. Field names follow
// schema/report.schema.json.

#include <nlohmann/json.hpp>

#include "d2lab/matrix.hpp"
#include "d2lab/modal.hpp"
#include "d2lab/search.hpp"
#include "d2lab/verify.hpp"

namespace d2lab {

using nlohmann::json;

inline json to_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) j[k] = v;
  return j;
}

inline json to_json(const Matrix& m) {
  return {{"size", m.size()},          {"designated", m.designated()}, {"neg", m.neg_table()},
          {"or", m.or_table()},        {"dand", m.dconj_table()},      {"dimp", m.dimp_table()}};
}

inline json to_json(const SchemeCheck& c) {
  if (c.passed()) return {{"pass", true}};
  return {{"pass", false}, {"witness", to_json(c.failure->witness)}, {"value", c.failure->value}};
}

inline json to_json(const MpCheck& c) {
  if (c.passed()) return {{"pass", true}};
  return {{"pass", false}, {"antecedent", c.failure->first}, {"consequent", c.failure->second}};
}

inline json to_json(const ValidationReport& r) {
  json axioms = json::array(), refutations = json::array();
  for (const auto& a : r.axioms) {
    json e = to_json(a.check);
    e["axiom"] = a.axiom_id;
    axioms.push_back(std::move(e));
  }
  for (const auto& a : r.refutations) {
    json e = to_json(a.check);
    e["axiom"] = a.axiom_id;
    refutations.push_back(std::move(e));
  }
  return {{"matrix", r.matrix_id}, {"system", r.system_id}, {"axioms", axioms},
          {"mp", to_json(r.mp)},   {"refutations", refutations}};
}

inline json to_json(const Finding& f) {
  return {{"subject", f.subject}, {"expected", f.expected}, {"computed", f.computed}, {"certificate", f.certificate}};
}

inline json to_json(const Countermodel& cm) {
  json worlds = json::array();
  for (std::size_t w = 0; w < cm.model.worlds.size(); ++w) worlds.push_back(cm.model.world_bits(w));
  return {{"atoms", cm.model.atoms}, {"worlds", worlds}, {"world", cm.world}};
}

inline json to_json(const Verdict& v) {
  json j = {{"valid", v.valid()}, {"models_checked", v.models_checked}};
  j["countermodel"] = v.countermodel ? to_json(*v.countermodel) : json(nullptr);
  return j;
}

inline const char* variant_name(DConjVariant v) { return v == DConjVariant::left ? "left" : "right"; }

inline json to_json(const ClassificationRow& r) {
  json j = {{"axiom", r.axiom_id},
            {"instance", render(r.instance)},
            {"variant", variant_name(r.variant)},
            {"verdict", to_json(r.verdict)},
            {"mark", std::string(1, mark_char(r.mark))},
            {"agreement", agreement_name(r.agreement)},
            {"certificate", certificate_text(r.verdict)}};
  j["alt_verdict"] = r.alt_verdict ? to_json(*r.alt_verdict) : json(nullptr);
  return j;
}

inline json to_json(const ClaimRecord& r) {
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back(to_json(f));
  return {{"claim", r.claim.number},
          {"matrix", r.claim.matrix_id},
          {"system", r.claim.system_id},
          {"target", r.claim.target_id},
          {"expected", {{"system_validated", true}, {"target_refuted", true}}},
          {"computed", {{"system_validated", r.system_validated()}, {"target_refuted", r.target_refuted()}}},
          {"target_check", to_json(r.target().check)},
          {"validation", to_json(r.validation)},
          {"findings", findings}};
}

}  // namespace d2lab
