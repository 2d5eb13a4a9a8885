#pragma once

// Finite logical matrices for the discussive language: truth values 1..n, a
// designated subset, and tables for ~, |, ^ (discussive conjunction) and
// => (discussive implication). Binary tables are indexed [first][second].

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2lab/axioms.hpp"
#include "d2lab/formula.hpp"

namespace d2lab {

using Value = int;

class MatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Matrix {
 public:
  static constexpr int kMaxSize = 16;

  Matrix() = default;

  /// Throws MatrixError when a table has the wrong length, a value lies
  /// outside 1..n, or the designated set is empty.
  Matrix(int size, std::vector<Value> designated, std::vector<Value> neg, std::vector<Value> lor,
         std::vector<Value> dconj, std::vector<Value> dimp)
      : size_(size),
        neg_(std::move(neg)),
        lor_(std::move(lor)),
        dconj_(std::move(dconj)),
        dimp_(std::move(dimp)) {
    if (size_ < 1 || size_ > kMaxSize)
      throw MatrixError("matrix size must be in 1.." + std::to_string(kMaxSize));
    if (designated.empty()) throw MatrixError("designated set must be nonempty");
    for (Value v : designated) {
      check_value(v, "designated");
      designated_mask_ |= bit(v);
    }
    check_table(neg_, static_cast<std::size_t>(size_), "neg");
    const auto sq = static_cast<std::size_t>(size_ * size_);
    check_table(lor_, sq, "or");
    check_table(dconj_, sq, "dand");
    check_table(dimp_, sq, "dimp");
  }

  int size() const noexcept { return size_; }
  std::uint32_t designated_mask() const noexcept { return designated_mask_; }
  bool is_designated(Value v) const noexcept { return (designated_mask_ >> (v - 1)) & 1u; }

  std::vector<Value> designated() const {
    std::vector<Value> out;
    for (Value v = 1; v <= size_; ++v)
      if (is_designated(v)) out.push_back(v);
    return out;
  }

  Value neg(Value a) const { return neg_[idx(a)]; }
  Value lor(Value a, Value b) const { return lor_[idx(a, b)]; }
  Value dconj(Value a, Value b) const { return dconj_[idx(a, b)]; }
  Value dimp(Value a, Value b) const { return dimp_[idx(a, b)]; }

  const std::vector<Value>& neg_table() const noexcept { return neg_; }
  const std::vector<Value>& or_table() const noexcept { return lor_; }
  const std::vector<Value>& dconj_table() const noexcept { return dconj_; }
  const std::vector<Value>& dimp_table() const noexcept { return dimp_; }

  /// neg, or, dand, dimp concatenated; the cell order used by search and
  /// canonicalization.
  std::vector<Value> cells() const {
    std::vector<Value> out(neg_);
    out.insert(out.end(), lor_.begin(), lor_.end());
    out.insert(out.end(), dconj_.begin(), dconj_.end());
    out.insert(out.end(), dimp_.begin(), dimp_.end());
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix&, const Matrix&) = default;

 private:
  static std::uint32_t bit(Value v) { return 1u << (v - 1); }

  std::size_t idx(Value a) const { return static_cast<std::size_t>(a - 1); }
  std::size_t idx(Value a, Value b) const { return static_cast<std::size_t>((a - 1) * size_ + (b - 1)); }

  void check_value(Value v, const char* what) const {
    if (v < 1 || v > size_)
      throw MatrixError(std::string(what) + " value " + std::to_string(v) + " out of range 1.." +
                        std::to_string(size_));
  }

  void check_table(const std::vector<Value>& t, std::size_t expect, const char* what) const {
    if (t.size() != expect)
      throw MatrixError(std::string(what) + " table has " + std::to_string(t.size()) + " entries, expected " +
                        std::to_string(expect));
    for (Value v : t) check_value(v, what);
  }

  int size_ = 0;
  std::uint32_t designated_mask_ = 0;
  std::vector<Value> neg_, lor_, dconj_, dimp_;
};

/// Values for the leaves (atoms and metavariables, keyed by name) of a formula.
using Assignment = std::map<std::string, Value>;

/// Tree-walking evaluation. Throws MatrixError on an uncovered leaf, an
/// out-of-range leaf value, or a non-discursive connective.
inline Value eval(const Matrix& m, const Formula& f, const Assignment& a) {
  switch (f.op()) {
    case Connective::atom:
    case Connective::metavar: {
      auto it = a.find(f.name());
      if (it == a.end()) throw MatrixError("assignment does not cover '" + f.name() + "'");
      if (it->second < 1 || it->second > m.size())
        throw MatrixError("value " + std::to_string(it->second) + " for '" + f.name() + "' out of range");
      return it->second;
    }
    case Connective::neg: return m.neg(eval(m, f.child(), a));
    case Connective::lor: return m.lor(eval(m, f.lhs(), a), eval(m, f.rhs(), a));
    case Connective::dconj: return m.dconj(eval(m, f.lhs(), a), eval(m, f.rhs(), a));
    case Connective::dimp: return m.dimp(eval(m, f.lhs(), a), eval(m, f.rhs(), a));
    default: throw MatrixError("connective not interpreted by discussive matrices: " + render(f));
  }
}

// ---------------------------------------------------------------------------
// Compiled evaluation. A formula is flattened to postfix over leaf slots so
// that scheme checks over all n^k assignments avoid map lookups.

enum class Instr : std::uint8_t { leaf, neg, lor, dconj, dimp };

struct Step {
  Instr instr;
  std::uint8_t slot;  // leaf slot for Instr::leaf
};

class Program {
 public:
  explicit Program(const Formula& f) : leaves_(d2lab::leaves(f)) {
    if (!is_in_language(f, Language::discursive))
      throw MatrixError("formula is not in the discursive language: " + render(f));
    if (leaves_.size() > 255) throw LimitError("too many distinct leaves");
    emit(f);
  }

  const std::vector<std::string>& leaves() const noexcept { return leaves_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }

  /// `values[i]` is the value of leaf i. Values must be in range.
  Value run(const Matrix& m, const std::vector<Value>& values) const {
    Value stack[64];
    std::vector<Value> heap;
    Value* st = stack;
    if (steps_.size() > 64) {
      heap.resize(steps_.size());
      st = heap.data();
    }
    int sp = 0;
    for (const Step& s : steps_) {
      switch (s.instr) {
        case Instr::leaf: st[sp++] = values[s.slot]; break;
        case Instr::neg: st[sp - 1] = m.neg(st[sp - 1]); break;
        case Instr::lor: --sp; st[sp - 1] = m.lor(st[sp - 1], st[sp]); break;
        case Instr::dconj: --sp; st[sp - 1] = m.dconj(st[sp - 1], st[sp]); break;
        case Instr::dimp: --sp; st[sp - 1] = m.dimp(st[sp - 1], st[sp]); break;
      }
    }
    return st[0];
  }

 private:
  void emit(const Formula& f) {
    switch (f.op()) {
      case Connective::atom:
      case Connective::metavar: {
        const auto pos = std::find(leaves_.begin(), leaves_.end(), f.name()) - leaves_.begin();
        steps_.push_back({Instr::leaf, static_cast<std::uint8_t>(pos)});
        return;
      }
      case Connective::neg: emit(f.child()); steps_.push_back({Instr::neg, 0}); return;
      case Connective::lor: emit(f.lhs()); emit(f.rhs()); steps_.push_back({Instr::lor, 0}); return;
      case Connective::dconj: emit(f.lhs()); emit(f.rhs()); steps_.push_back({Instr::dconj, 0}); return;
      case Connective::dimp: emit(f.lhs()); emit(f.rhs()); steps_.push_back({Instr::dimp, 0}); return;
      default: throw MatrixError("unexpected connective");
    }
  }

  std::vector<std::string> leaves_;
  std::vector<Step> steps_;
};

// ---------------------------------------------------------------------------
// Checks

struct Counterexample {
  Assignment witness;
  Value value = 0;
};

/// Outcome of checking one scheme: pass, or the lexicographically first
/// counter-assignment (leaves in first-occurrence order, first leaf slowest).
struct SchemeCheck {
  std::optional<Counterexample> failure;
  bool passed() const noexcept { return !failure.has_value(); }
};

struct MpCheck {
  std::optional<std::pair<Value, Value>> failure;  // (antecedent, consequent)
  bool passed() const noexcept { return !failure.has_value(); }
};

/// Upper bound on n^k assignments examined by check_scheme.
inline constexpr std::uint64_t kMaxAssignments = 1ull << 24;

inline SchemeCheck check_scheme(const Matrix& m, const Formula& scheme) {
  const Program prog(scheme);
  const std::size_t k = prog.leaves().size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= static_cast<std::uint64_t>(m.size());
    if (total > kMaxAssignments)
      throw LimitError("scheme has too many leaves for exhaustive check over a size-" + std::to_string(m.size()) +
                       " matrix");
  }
  std::vector<Value> values(k, 1);
  for (;;) {
    const Value v = prog.run(m, values);
    if (!m.is_designated(v)) {
      Counterexample cx;
      for (std::size_t i = 0; i < k; ++i) cx.witness.emplace(prog.leaves()[i], values[i]);
      cx.value = v;
      return {cx};
    }
    // Odometer with the last leaf varying fastest.
    std::size_t i = k;
    while (i > 0 && values[i - 1] == m.size()) values[--i] = 1;
    if (i == 0) return {};
    ++values[i - 1];
  }
}

inline MpCheck check_mp(const Matrix& m) {
  for (Value a = 1; a <= m.size(); ++a) {
    if (!m.is_designated(a)) continue;
    for (Value b = 1; b <= m.size(); ++b)
      if (m.is_designated(m.dimp(a, b)) && !m.is_designated(b)) return {std::pair{a, b}};
  }
  return {};
}

struct AxiomResult {
  std::string axiom_id;
  SchemeCheck check;
};

struct ValidationReport {
  std::string matrix_id;
  std::string system_id;
  std::vector<AxiomResult> axioms;
  MpCheck mp;
  std::vector<AxiomResult> refutations;

  bool all_axioms_pass() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.check.passed(); });
  }
  bool all_refuted() const {
    return std::all_of(refutations.begin(), refutations.end(),
                       [](const AxiomResult& r) { return !r.check.passed(); });
  }
};

/// Checks every axiom and MP closure; never stops at the first failure.
inline ValidationReport check_system(const Matrix& m, const AxiomSystem& sys, std::string matrix_id = {},
                                     const std::vector<Axiom>& refute = {}) {
  ValidationReport report;
  report.matrix_id = std::move(matrix_id);
  report.system_id = sys.id;
  for (const auto& ax : sys.axioms) report.axioms.push_back({ax.id, check_scheme(m, ax.scheme)});
  report.mp = check_mp(m);
  for (const auto& ax : refute) report.refutations.push_back({ax.id, check_scheme(m, ax.scheme)});
  return report;
}

}  // namespace d2lab
