#pragma once

// Discussive-to-modal translation and an S5 decision procedure.
//
// S5 validity is decided on universal models: a nonempty set of distinct
// propositional valuations, every world seeing every world. For k atoms
// there are 2^(2^k) - 1 such models; each is evaluated bit-parallel, one bit
// per valuation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2lab/axioms.hpp"
#include "d2lab/formula.hpp"

namespace d2lab {

class ModalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Translation

/// Which conjunct of a discussive conjunction receives the diamond.
enum class DConjVariant { right, left };

struct TranslationOptions {
  DConjVariant dconj = DConjVariant::right;
};

/// tau: identity on atoms, ~ and |; (a => b) |-> <>a -> b;
/// (a ^ b) |-> a & <>b (or <>a & b with DConjVariant::left).
inline Formula translate(const Formula& f, TranslationOptions opts = {}) {
  switch (f.op()) {
    case Connective::atom: return f;
    case Connective::metavar:
      throw ModalError("cannot translate a scheme; metavariable " + f.name() + " encountered");
    case Connective::neg: return neg(translate(f.child(), opts));
    case Connective::lor: return lor(translate(f.lhs(), opts), translate(f.rhs(), opts));
    case Connective::dimp: return imp(dia(translate(f.lhs(), opts)), translate(f.rhs(), opts));
    case Connective::dconj:
      if (opts.dconj == DConjVariant::left) return land(dia(translate(f.lhs(), opts)), translate(f.rhs(), opts));
      return land(translate(f.lhs(), opts), dia(translate(f.rhs(), opts)));
    default: throw ModalError("not a discursive formula: " + render(f));
  }
}

// ---------------------------------------------------------------------------
// Explicit Kripke models

class ExplicitKripkeModel {
 public:
  /// `relation[w][u]` is wRu. Throws ModalError unless the relation is an
  /// equivalence on a nonempty world set.
  ExplicitKripkeModel(std::vector<std::vector<bool>> relation, std::map<std::string, std::set<int>> valuation)
      : relation_(std::move(relation)), valuation_(std::move(valuation)) {
    const auto n = relation_.size();
    if (n == 0) throw ModalError("Kripke model needs at least one world");
    for (const auto& row : relation_)
      if (row.size() != n) throw ModalError("accessibility relation must be square");
    for (std::size_t w = 0; w < n; ++w) {
      if (!relation_[w][w]) throw ModalError("accessibility relation is not reflexive");
      for (std::size_t u = 0; u < n; ++u) {
        if (relation_[w][u] != relation_[u][w]) throw ModalError("accessibility relation is not symmetric");
        for (std::size_t v = 0; v < n; ++v)
          if (relation_[w][u] && relation_[u][v] && !relation_[w][v])
            throw ModalError("accessibility relation is not transitive");
      }
    }
    for (const auto& [name, ws] : valuation_)
      for (int w : ws)
        if (w < 0 || static_cast<std::size_t>(w) >= n)
          throw ModalError("valuation of '" + name + "' names a world outside the model");
  }

  /// Universal accessibility over `world_count` worlds.
  static ExplicitKripkeModel universal(int world_count, std::map<std::string, std::set<int>> valuation) {
    const auto n = static_cast<std::size_t>(world_count);
    return ExplicitKripkeModel(std::vector<std::vector<bool>>(n, std::vector<bool>(n, true)), std::move(valuation));
  }

  int world_count() const noexcept { return static_cast<int>(relation_.size()); }
  bool sees(int w, int u) const { return relation_.at(w).at(u); }
  const std::map<std::string, std::set<int>>& valuation() const noexcept { return valuation_; }

  bool holds(const std::string& atom_name, int w) const {
    auto it = valuation_.find(atom_name);
    if (it == valuation_.end()) throw ModalError("atom '" + atom_name + "' has no valuation in the model");
    return it->second.count(w) != 0;
  }

 private:
  std::vector<std::vector<bool>> relation_;
  std::map<std::string, std::set<int>> valuation_;
};

/// Standard forcing relation.
inline bool eval_explicit(const ExplicitKripkeModel& m, int w, const Formula& f) {
  switch (f.op()) {
    case Connective::atom: return m.holds(f.name(), w);
    case Connective::neg: return !eval_explicit(m, w, f.child());
    case Connective::lor: return eval_explicit(m, w, f.lhs()) || eval_explicit(m, w, f.rhs());
    case Connective::land: return eval_explicit(m, w, f.lhs()) && eval_explicit(m, w, f.rhs());
    case Connective::imp: return !eval_explicit(m, w, f.lhs()) || eval_explicit(m, w, f.rhs());
    case Connective::iff: return eval_explicit(m, w, f.lhs()) == eval_explicit(m, w, f.rhs());
    case Connective::dia:
      for (int u = 0; u < m.world_count(); ++u)
        if (m.sees(w, u) && eval_explicit(m, u, f.child())) return true;
      return false;
    case Connective::box:
      for (int u = 0; u < m.world_count(); ++u)
        if (m.sees(w, u) && !eval_explicit(m, u, f.child())) return false;
      return true;
    default: throw ModalError("not a modal formula: " + render(f));
  }
}

// ---------------------------------------------------------------------------
// Universal models and verdicts

/// A set of distinct valuations; bit i of a valuation is the truth value of
/// atoms[i].
struct S5UniversalModel {
  std::vector<std::string> atoms;
  std::vector<std::uint32_t> worlds;

  bool holds(std::size_t atom_index, std::size_t world) const { return (worlds.at(world) >> atom_index) & 1u; }

  ExplicitKripkeModel to_explicit() const {
    std::map<std::string, std::set<int>> val;
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      auto& ws = val[atoms[a]];
      for (std::size_t w = 0; w < worlds.size(); ++w)
        if (holds(a, w)) ws.insert(static_cast<int>(w));
    }
    return ExplicitKripkeModel::universal(static_cast<int>(worlds.size()), std::move(val));
  }

  /// World as a bit string in atom order, e.g. "10" for p=T, q=F.
  std::string world_bits(std::size_t world) const {
    std::string s;
    for (std::size_t a = 0; a < atoms.size(); ++a) s += holds(a, world) ? '1' : '0';
    return s;
  }
};

struct Countermodel {
  S5UniversalModel model;
  std::size_t world = 0;
};

struct Verdict {
  std::optional<Countermodel> countermodel;
  std::uint64_t models_checked = 0;  // universal models examined
  bool valid() const noexcept { return !countermodel.has_value(); }
};

/// One-line certificate: the model count for Valid, the countermodel otherwise.
inline std::string certificate_text(const Verdict& v) {
  if (v.valid()) return "exhaustive enumeration of " + std::to_string(v.models_checked) + " universal models";
  const auto& cm = *v.countermodel;
  std::string out = "atoms [";
  for (std::size_t i = 0; i < cm.model.atoms.size(); ++i) out += (i ? " " : "") + cm.model.atoms[i];
  out += "], worlds [";
  for (std::size_t w = 0; w < cm.model.worlds.size(); ++w) out += (w ? " " : "") + cm.model.world_bits(w);
  out += "], falsified at world " + std::to_string(cm.world);
  return out;
}

inline constexpr int kDefaultAtomLimit = 4;
inline constexpr int kMaxAtomLimit = 4;

namespace detail {

// Truth sets are bitmasks over the 2^k valuations; `dom` is the model.
inline std::uint32_t truth_set(const Formula& f, const std::vector<std::string>& atom_order,
                               const std::vector<std::uint32_t>& atom_sets, std::uint32_t dom) {
  switch (f.op()) {
    case Connective::atom: {
      const auto pos = std::find(atom_order.begin(), atom_order.end(), f.name()) - atom_order.begin();
      return atom_sets[static_cast<std::size_t>(pos)] & dom;
    }
    case Connective::neg: return dom & ~truth_set(f.child(), atom_order, atom_sets, dom);
    case Connective::lor:
      return truth_set(f.lhs(), atom_order, atom_sets, dom) | truth_set(f.rhs(), atom_order, atom_sets, dom);
    case Connective::land:
      return truth_set(f.lhs(), atom_order, atom_sets, dom) & truth_set(f.rhs(), atom_order, atom_sets, dom);
    case Connective::imp:
      return (dom & ~truth_set(f.lhs(), atom_order, atom_sets, dom)) |
             truth_set(f.rhs(), atom_order, atom_sets, dom);
    case Connective::iff:
      return dom & ~(truth_set(f.lhs(), atom_order, atom_sets, dom) ^ truth_set(f.rhs(), atom_order, atom_sets, dom));
    case Connective::dia: return truth_set(f.child(), atom_order, atom_sets, dom) ? dom : 0u;
    case Connective::box: return truth_set(f.child(), atom_order, atom_sets, dom) == dom ? dom : 0u;
    default: throw ModalError("not a modal formula: " + render(f));
  }
}

inline void require_modal_ground(const Formula& f) {
  if (!is_in_language(f, Language::modal)) throw ModalError("not a modal formula: " + render(f));
  if (!is_ground(f)) throw ModalError("metavariable in modal formula: " + render(f));
}

}  // namespace detail

class AtomLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decides S5 validity by exhaustive enumeration of universal models in
/// increasing subset-mask order. An Invalid verdict carries the first
/// falsifying model and, within it, the falsified world of least valuation.
/// Throws AtomLimitError when the formula has more than `atom_limit` atoms.
inline Verdict s5_valid(const Formula& f, int atom_limit = kDefaultAtomLimit) {
  detail::require_modal_ground(f);
  if (atom_limit < 0 || atom_limit > kMaxAtomLimit)
    throw AtomLimitError("atom limit must be in 0.." + std::to_string(kMaxAtomLimit));
  const auto atom_order = atoms(f);
  const int k = static_cast<int>(atom_order.size());
  if (k > atom_limit)
    throw AtomLimitError("formula has " + std::to_string(k) + " atoms; the S5 decider is limited to " +
                         std::to_string(atom_limit) + " (undecided at this budget)");
  const std::uint32_t vals = 1u << k;
  std::vector<std::uint32_t> atom_sets(static_cast<std::size_t>(k), 0);
  for (std::uint32_t v = 0; v < vals; ++v)
    for (int a = 0; a < k; ++a)
      if ((v >> a) & 1u) atom_sets[static_cast<std::size_t>(a)] |= 1u << v;

  const std::uint32_t models = 1u << vals;
  for (std::uint32_t dom = 1; dom < models; ++dom) {
    const std::uint32_t falsified = dom & ~detail::truth_set(f, atom_order, atom_sets, dom);
    if (!falsified) continue;
    const std::uint32_t first = falsified & (~falsified + 1u);
    Countermodel cm;
    cm.model.atoms = atom_order;
    for (std::uint32_t v = 0; v < vals; ++v) {
      if (!((dom >> v) & 1u)) continue;
      if ((1u << v) == first) cm.world = cm.model.worlds.size();
      cm.model.worlds.push_back(v);
    }
    return {cm, dom};
  }
  return {std::nullopt, models - 1u};
}

/// Truth-table equivalence of two modality-free formulas.
inline bool taut_equiv(const Formula& a, const Formula& b) {
  for (const Formula* f : {&a, &b}) {
    detail::require_modal_ground(*f);
    if (!is_modal_free(*f)) throw ModalError("taut_equiv requires modality-free formulas: " + render(*f));
  }
  auto order = atoms(a);
  for (const auto& name : atoms(b))
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  if (order.size() > 20) throw AtomLimitError("too many atoms for a truth table");
  // Each valuation is a one-world universal model.
  const std::uint64_t vals = 1ull << order.size();
  for (std::uint64_t v = 0; v < vals; ++v) {
    std::map<std::string, std::set<int>> val;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto& ws = val[order[i]];
      if ((v >> i) & 1u) ws.insert(0);
    }
    const auto m = ExplicitKripkeModel::universal(1, std::move(val));
    if (eval_explicit(m, 0, a) != eval_explicit(m, 0, b)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// D2 validity

struct D2Options {
  DConjVariant dconj = DConjVariant::right;
  bool outer_diamond = true;
  int atom_limit = kDefaultAtomLimit;
};

/// The modal formula whose S5 validity decides D2 validity of `f`.
inline Formula d2_obligation(const Formula& f, const D2Options& opts = {}) {
  Formula t = translate(f, {opts.dconj});
  return opts.outer_diamond ? dia(t) : t;
}

/// f is D2-valid iff <>tau(f) is S5-valid.
inline Verdict d2_valid(const Formula& f, const D2Options& opts = {}) {
  if (!is_in_language(f, Language::discursive)) throw ModalError("not a discursive formula: " + render(f));
  if (!is_ground(f)) throw ModalError("d2_valid needs a ground formula; take a canonical instance first");
  return s5_valid(d2_obligation(f, opts), opts.atom_limit);
}

/// For ~/|-only phi, psi with tau(phi) <-> tau(psi) a tautology, decides
/// whether <>(<>tau(phi) -> tau(psi)) is S5-valid. The validity of phi and
/// psi themselves is not required.
inline bool check_prop31(const Formula& phi, const Formula& psi) {
  for (const Formula* f : {&phi, &psi})
    if (!is_ground(*f) || !is_neg_or_only(*f))
      throw ModalError("check_prop31 requires ground formulas over ~ and | only: " + render(*f));
  const Formula tphi = translate(phi), tpsi = translate(psi);
  if (!taut_equiv(tphi, tpsi))
    throw ModalError("precondition violated: " + render(phi) + " and " + render(psi) + " are not equivalent");
  return s5_valid(dia(imp(dia(tphi), tpsi))).valid();
}

// ---------------------------------------------------------------------------
// Classification of axiom schemes

enum class TableMark { plus, minus, unknown, none };

inline char mark_char(TableMark m) {
  switch (m) {
    case TableMark::plus: return '+';
    case TableMark::minus: return '-';
    case TableMark::unknown: return '?';
    default: return ' ';
  }
}

enum class Agreement { agrees, disagrees, resolved, unmarked };

inline const char* agreement_name(Agreement a) {
  switch (a) {
    case Agreement::agrees: return "agrees";
    case Agreement::disagrees: return "FINDING";
    case Agreement::resolved: return "resolved";
    default: return "unmarked";
  }
}

struct ClassificationRow {
  std::string axiom_id;
  Formula instance;
  DConjVariant variant = DConjVariant::right;
  Verdict verdict;
  std::optional<Verdict> alt_verdict;  // other ^ translation; schemes containing ^ only
  TableMark mark = TableMark::none;
  Agreement agreement = Agreement::unmarked;

  bool variants_differ() const { return alt_verdict && alt_verdict->valid() != verdict.valid(); }
};

/// Marks from the table separating D2-valid from D2-invalid D axioms.
inline TableMark d_axiom_mark(const std::string& id) {
  static const std::map<std::string, TableMark> kMarks = {
      {"DDK10", TableMark::plus},    {"DDK12", TableMark::minus}, {"DDK13", TableMark::minus},
      {"DDK14", TableMark::minus},   {"DDK15", TableMark::plus},  {"DDK16", TableMark::minus},
      {"DDK17", TableMark::plus},    {"DDK18", TableMark::unknown}, {"DDK19", TableMark::minus},
      {"DDK20", TableMark::plus},    {"DDK21", TableMark::unknown}, {"DDK22", TableMark::minus},
  };
  auto it = kMarks.find(id);
  return it == kMarks.end() ? TableMark::none : it->second;
}

inline Agreement compare_mark(const Verdict& v, TableMark mark) {
  switch (mark) {
    case TableMark::plus: return v.valid() ? Agreement::agrees : Agreement::disagrees;
    case TableMark::minus: return v.valid() ? Agreement::disagrees : Agreement::agrees;
    case TableMark::unknown: return Agreement::resolved;
    default: return Agreement::unmarked;
  }
}

inline bool contains_dconj(const Formula& f) {
  if (f.op() == Connective::dconj) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (contains_dconj(f.child(i))) return true;
  return false;
}

inline ClassificationRow classify_axiom(const Axiom& ax, TableMark mark, D2Options opts = {}) {
  ClassificationRow row;
  row.axiom_id = ax.id;
  row.instance = canonical_instance(ax.scheme);
  row.variant = opts.dconj;
  row.verdict = d2_valid(row.instance, opts);
  if (contains_dconj(row.instance)) {
    opts.dconj = opts.dconj == DConjVariant::right ? DConjVariant::left : DConjVariant::right;
    row.alt_verdict = d2_valid(row.instance, opts);
  }
  row.mark = mark;
  row.agreement = compare_mark(row.verdict, mark);
  return row;
}

/// DDK10..DDK22 against the published marks (DDK11 carries no mark).
inline std::vector<ClassificationRow> classify_d_axioms(const D2Options& opts = {}) {
  std::vector<ClassificationRow> rows;
  const auto& sys = axiom_system("D");
  for (int i = 10; i <= 22; ++i) {
    const std::string id = "DDK" + std::to_string(i);
    rows.push_back(classify_axiom(*sys.find(id), d_axiom_mark(id), opts));
  }
  return rows;
}

/// D2 validity of the canonical instances of C1..C15. Soundness of C
/// predicts every row valid; rows are marked '+' accordingly.
inline std::vector<ClassificationRow> check_c_axioms(const D2Options& opts = {}) {
  std::vector<ClassificationRow> rows;
  for (const auto& ax : axiom_system("C").axioms) rows.push_back(classify_axiom(ax, TableMark::plus, opts));
  return rows;
}

}  // namespace d2lab
