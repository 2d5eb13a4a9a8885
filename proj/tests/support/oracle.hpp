#pragma once

// Test-only reference implementations, written independently of the
// library's evaluators: a matrix evaluator that works directly on formula
// text, and random generators shared by the property tests.

#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2lab/formula.hpp"
#include "d2lab/matrix.hpp"
#include "d2lab/modal.hpp"

namespace oracle {

/// Evaluates discursive formula text over raw tables while parsing it.
class TextEvaluator {
 public:
  TextEvaluator(const d2lab::Matrix& m, std::map<std::string, int> values)
      : n_(m.size()),
        neg_(m.neg_table()),
        or_(m.or_table()),
        and_(m.dconj_table()),
        imp_(m.dimp_table()),
        values_(std::move(values)) {}

  int run(const std::string& text) {
    text_ = text;
    pos_ = 0;
    const int v = implication();
    ws();
    if (pos_ != text_.size()) throw std::logic_error("oracle: trailing input in " + text_);
    return v;
  }

 private:
  int cell(const std::vector<int>& t, int a, int b) const { return t[(a - 1) * n_ + (b - 1)]; }
  void ws() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }
  bool eat(const std::string& tok) {
    ws();
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  int implication() {
    const int lhs = disjunction();
    if (eat("=>")) return cell(imp_, lhs, implication());
    return lhs;
  }
  int disjunction() {
    int lhs = conjunction();
    while (eat("|")) lhs = cell(or_, lhs, conjunction());
    return lhs;
  }
  int conjunction() {
    int lhs = unary();
    while (eat("^")) lhs = cell(and_, lhs, unary());
    return lhs;
  }
  int unary() {
    if (eat("~")) return neg_[unary() - 1];
    if (eat("(")) {
      const int v = implication();
      if (!eat(")")) throw std::logic_error("oracle: missing ')'");
      return v;
    }
    ws();
    std::string name;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      name += text_[pos_++];
    return values_.at(name);
  }

  int n_;
  std::vector<int> neg_, or_, and_, imp_;
  std::map<std::string, int> values_;
  std::string text_;
  std::size_t pos_ = 0;
};

/// Leaf names of formula text in first-occurrence order.
inline std::vector<std::string> text_leaves(const std::string& text) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      std::string name;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) name += text[i++];
      bool seen = false;
      for (const auto& s : out) seen = seen || s == name;
      if (!seen) out.push_back(name);
    } else {
      ++i;
    }
  }
  return out;
}

struct BruteResult {
  bool valid = true;
  std::map<std::string, int> witness;
  int value = 0;
};

/// Exhaustive scheme check; first counterexample in lexicographic order
/// with the first leaf varying slowest.
inline BruteResult brute_force_check(const d2lab::Matrix& m, const std::string& text) {
  const auto names = text_leaves(text);
  std::vector<int> vals(names.size(), 1);
  for (;;) {
    std::map<std::string, int> a;
    for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = vals[i];
    const int v = TextEvaluator(m, a).run(text);
    if (!m.is_designated(v)) return {false, a, v};
    std::size_t i = names.size();
    while (i > 0 && vals[i - 1] == m.size()) vals[--i] = 1;
    if (i == 0) return {};
    ++vals[i - 1];
  }
}

// ---------------------------------------------------------------------------
// Random generators

inline d2lab::Formula random_formula(std::mt19937& rng, const std::vector<d2lab::Formula>& leaves,
                                     const std::vector<d2lab::Connective>& unary,
                                     const std::vector<d2lab::Connective>& binary, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || pick(rng) < 2) return leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
  const std::size_t choices = unary.size() + binary.size();
  const std::size_t c = std::uniform_int_distribution<std::size_t>(0, choices - 1)(rng);
  if (c < unary.size()) return d2lab::Formula::unary(unary[c], random_formula(rng, leaves, unary, binary, depth - 1));
  return d2lab::Formula::binary(binary[c - unary.size()], random_formula(rng, leaves, unary, binary, depth - 1),
                                random_formula(rng, leaves, unary, binary, depth - 1));
}

inline d2lab::Formula random_discursive(std::mt19937& rng, int depth, bool schemes = false) {
  using d2lab::Connective;
  std::vector<d2lab::Formula> leaves = {d2lab::atom("p"), d2lab::atom("q"), d2lab::atom("r")};
  if (schemes) leaves = {d2lab::mvar('A'), d2lab::mvar('B'), d2lab::mvar('C')};
  return random_formula(rng, leaves, {Connective::neg}, {Connective::lor, Connective::dconj, Connective::dimp}, depth);
}

inline d2lab::Formula random_modal(std::mt19937& rng, int depth, int atoms = 3) {
  using d2lab::Connective;
  std::vector<d2lab::Formula> leaves;
  for (int i = 0; i < atoms; ++i) leaves.push_back(d2lab::atom(std::string(1, static_cast<char>('p' + i))));
  return random_formula(rng, leaves, {Connective::neg, Connective::dia, Connective::box},
                        {Connective::lor, Connective::land, Connective::imp, Connective::iff}, depth);
}

inline d2lab::Matrix random_matrix(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> val(1, n);
  auto table = [&](std::size_t len) {
    std::vector<int> t(len);
    for (auto& v : t) v = val(rng);
    return t;
  };
  std::vector<int> des;
  while (des.empty())
    for (int v = 1; v <= n; ++v)
      if (std::bernoulli_distribution(0.5)(rng)) des.push_back(v);
  const auto sq = static_cast<std::size_t>(n * n);
  return d2lab::Matrix(n, des, table(static_cast<std::size_t>(n)), table(sq), table(sq), table(sq));
}

// Random S5 model: worlds partitioned into classes by a random label.
inline d2lab::ExplicitKripkeModel random_s5(std::mt19937& rng, int atoms) {
  const int n = std::uniform_int_distribution<int>(1, 6)(rng);
  std::vector<int> cls(static_cast<std::size_t>(n));
  for (auto& c : cls) c = std::uniform_int_distribution<int>(0, n - 1)(rng);
  std::vector<std::vector<bool>> rel(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int w = 0; w < n; ++w)
    for (int u = 0; u < n; ++u) rel[w][u] = cls[w] == cls[u];
  std::map<std::string, std::set<int>> val;
  for (int a = 0; a < atoms; ++a) {
    auto& ws = val[std::string(1, static_cast<char>('p' + a))];
    for (int w = 0; w < n; ++w)
      if (std::bernoulli_distribution(0.5)(rng)) ws.insert(w);
  }
  return d2lab::ExplicitKripkeModel(rel, val);
}

// Equivalence-preserving rewrite at a random position: insert or remove a
// double negation, commute a disjunction, or reassociate one.
inline d2lab::Formula rewrite(std::mt19937& rng, const d2lab::Formula& f) {
  const int choice = std::uniform_int_distribution<int>(0, 9)(rng);
  using d2lab::Connective;
  if (f.op() == Connective::neg && f.child().op() == Connective::neg && choice < 3) return f.child().child();
  if (f.op() == Connective::lor) {
    if (choice < 3) return d2lab::lor(f.rhs(), f.lhs());
    if (choice < 5 && f.lhs().op() == Connective::lor)
      return d2lab::lor(f.lhs().lhs(), d2lab::lor(f.lhs().rhs(), f.rhs()));
    if (choice < 7) return d2lab::lor(rewrite(rng, f.lhs()), rewrite(rng, f.rhs()));
  }
  if (f.op() == Connective::neg && choice < 7) return d2lab::neg(rewrite(rng, f.child()));
  if (choice < 9) return f;
  return d2lab::neg(d2lab::neg(f));
}

inline d2lab::Formula random_neg_or(std::mt19937& rng, int depth) {
  using d2lab::Connective;
  return random_formula(rng, {d2lab::atom("p"), d2lab::atom("q"), d2lab::atom("r")}, {Connective::neg},
                        {Connective::lor}, depth);
}

}  // namespace oracle
