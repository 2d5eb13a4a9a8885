#pragma once

// Formula ASTs for the discussive language {~, |, =>, ^} and the modal
// language {~, |, &, ->, <->, <>, []}, plus parsing and printing.
//
// Grammar (tightest first):
//   unary    ~  <>  []
//   and      ^  &          left associative
//   or       |             left associative
//   imp      =>  ->        right associative
//   iff      <->           right associative
// Atoms are lowercase identifiers ([a-z][a-z0-9_]*). A single uppercase
// letter is a metavariable (scheme placeholder).

#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace d2lab {

enum class Language { discursive, modal };

enum class Connective {
  atom,
  metavar,
  neg,
  lor,
  land,   // classical, modal only
  imp,    // classical, modal only
  iff,    // modal only
  dimp,   // discussive, discursive only
  dconj,  // discussive, discursive only
  dia,    // modal only
  box,    // modal only
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string message, std::vector<std::string> expected = {})
      : std::runtime_error(build(offset, message, expected)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string build(std::size_t offset, const std::string& message,
                           const std::vector<std::string>& expected) {
    std::string out = "parse error at offset " + std::to_string(offset) + ": " + message;
    if (!expected.empty()) {
      out += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
      }
      out += ")";
    }
    return out;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Immutable formula handle. Copies share structure; equality is structural.
class Formula {
 public:
  Formula() = default;

  static Formula atom(std::string name) { return Formula(Connective::atom, std::move(name), {}); }
  static Formula metavar(char name) { return Formula(Connective::metavar, std::string(1, name), {}); }
  static Formula unary(Connective op, Formula child) { return Formula(op, {}, {std::move(child)}); }
  static Formula binary(Connective op, Formula lhs, Formula rhs) {
    return Formula(op, {}, {std::move(lhs), std::move(rhs)});
  }

  bool empty() const noexcept { return node_ == nullptr; }
  Connective op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->children.size(); }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }
  bool is_leaf() const { return op() == Connective::atom || op() == Connective::metavar; }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.op() != b.op() || a.name() != b.name() || a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i)
      if (!(a.child(i) == b.child(i))) return false;
    return true;
  }

 private:
  struct Node {
    Connective op;
    std::string name;
    std::vector<Formula> children;
  };

  Formula(Connective op, std::string name, std::vector<Formula> children)
      : node_(std::make_shared<const Node>(Node{op, std::move(name), std::move(children)})) {}

  std::shared_ptr<const Node> node_;
};

// Builders, mostly for tests and translation code.
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula mvar(char name) { return Formula::metavar(name); }
inline Formula neg(Formula a) { return Formula::unary(Connective::neg, std::move(a)); }
inline Formula dia(Formula a) { return Formula::unary(Connective::dia, std::move(a)); }
inline Formula box(Formula a) { return Formula::unary(Connective::box, std::move(a)); }
inline Formula lor(Formula a, Formula b) { return Formula::binary(Connective::lor, std::move(a), std::move(b)); }
inline Formula land(Formula a, Formula b) { return Formula::binary(Connective::land, std::move(a), std::move(b)); }
inline Formula imp(Formula a, Formula b) { return Formula::binary(Connective::imp, std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::binary(Connective::iff, std::move(a), std::move(b)); }
inline Formula dimp(Formula a, Formula b) { return Formula::binary(Connective::dimp, std::move(a), std::move(b)); }
inline Formula dconj(Formula a, Formula b) { return Formula::binary(Connective::dconj, std::move(a), std::move(b)); }

inline bool allowed_in(Connective c, Language lang) {
  switch (c) {
    case Connective::atom:
    case Connective::metavar:
    case Connective::neg:
    case Connective::lor:
      return true;
    case Connective::dimp:
    case Connective::dconj:
      return lang == Language::discursive;
    default:
      return lang == Language::modal;
  }
}

inline bool is_in_language(const Formula& f, Language lang) {
  if (!allowed_in(f.op(), lang)) return false;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (!is_in_language(f.child(i), lang)) return false;
  return true;
}

namespace detail {

template <typename Pred>
bool any_node(const Formula& f, Pred pred) {
  if (pred(f)) return true;
  for (std::size_t i = 0; i < f.arity(); ++i)
    if (any_node(f.child(i), pred)) return true;
  return false;
}

inline void collect_leaves(const Formula& f, Connective kind, std::vector<std::string>& out) {
  if (f.op() == kind) {
    for (const auto& s : out)
      if (s == f.name()) return;
    out.push_back(f.name());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_leaves(f.child(i), kind, out);
}

inline void collect_all_leaves(const Formula& f, std::vector<std::string>& out) {
  if (f.is_leaf()) {
    for (const auto& s : out)
      if (s == f.name()) return;
    out.push_back(f.name());
    return;
  }
  for (std::size_t i = 0; i < f.arity(); ++i) collect_all_leaves(f.child(i), out);
}

}  // namespace detail

/// Metavariable names in first-occurrence (left-to-right) order.
inline std::vector<char> metavariables(const Formula& f) {
  std::vector<std::string> names;
  detail::collect_leaves(f, Connective::metavar, names);
  std::vector<char> out;
  for (const auto& s : names) out.push_back(s[0]);
  return out;
}

/// Atom names in first-occurrence order.
inline std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  detail::collect_leaves(f, Connective::atom, out);
  return out;
}

/// Leaf names (atoms and metavariables) in first-occurrence order.
inline std::vector<std::string> leaves(const Formula& f) {
  std::vector<std::string> out;
  detail::collect_all_leaves(f, out);
  return out;
}

inline bool is_ground(const Formula& f) {
  return !detail::any_node(f, [](const Formula& g) { return g.op() == Connective::metavar; });
}

inline bool is_modal_free(const Formula& f) {
  return !detail::any_node(f, [](const Formula& g) {
    return g.op() == Connective::dia || g.op() == Connective::box;
  });
}

/// True for formulas built from leaves, ~ and | alone.
inline bool is_neg_or_only(const Formula& f) {
  return !detail::any_node(f, [](const Formula& g) {
    return !(g.is_leaf() || g.op() == Connective::neg || g.op() == Connective::lor);
  });
}

inline std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < f.arity(); ++i) d = std::max(d, depth(f.child(i)));
  return f.is_leaf() ? 0 : d + 1;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int precedence(Connective c) {
  switch (c) {
    case Connective::iff: return 0;
    case Connective::imp:
    case Connective::dimp: return 1;
    case Connective::lor: return 2;
    case Connective::land:
    case Connective::dconj: return 3;
    default: return 4;
  }
}

inline bool is_arrow(Connective c) { return precedence(c) <= 1; }

inline std::string_view symbol(Connective c) {
  switch (c) {
    case Connective::neg: return "~";
    case Connective::dia: return "<>";
    case Connective::box: return "[]";
    case Connective::lor: return "|";
    case Connective::land: return "&";
    case Connective::dconj: return "^";
    case Connective::imp: return "->";
    case Connective::dimp: return "=>";
    case Connective::iff: return "<->";
    default: return "";
  }
}

inline void render_into(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f.op());
  const bool paren = p < min_prec;
  if (paren) out += '(';
  if (f.is_leaf()) {
    out += f.name();
  } else if (f.arity() == 1) {
    out += symbol(f.op());
    render_into(f.child(), 4, out);
  } else {
    // Binary operands of arrows are always bracketed: `p => (q => p)`.
    const bool arrow = is_arrow(f.op());
    render_into(f.lhs(), arrow ? 4 : p, out);
    out += ' ';
    out += symbol(f.op());
    out += ' ';
    render_into(f.rhs(), arrow ? 4 : p + 1, out);
  }
  if (paren) out += ')';
}

}  // namespace detail

/// Minimal parentheses except around binary operands of =>, ->, <->;
/// parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Language lang) : text_(text), lang_(lang) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(pos_, "unexpected trailing input", {"binary connective", "end of input"});
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  // `=>` must not be mistaken for the tail of `<=>`; `->` not for `<->`.
  bool accept(std::string_view tok, Connective c) {
    if (!peek(tok)) return false;
    if (!allowed_in(c, lang_))
      throw ParseError(pos_, "connective '" + std::string(tok) + "' is not part of the " +
                                 (lang_ == Language::modal ? "modal" : "discursive") + " language");
    pos_ += tok.size();
    return true;
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (accept("<->", Connective::iff)) return iff(lhs, parse_iff());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("=>", Connective::dimp)) return dimp(lhs, parse_imp());
    if (accept("->", Connective::imp)) return imp(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|", Connective::lor)) lhs = lor(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    for (;;) {
      if (accept("^", Connective::dconj))
        lhs = dconj(lhs, parse_unary());
      else if (accept("&", Connective::land))
        lhs = land(lhs, parse_unary());
      else
        return lhs;
    }
  }

  Formula parse_unary() {
    if (accept("~", Connective::neg)) return neg(parse_unary());
    if (accept("<>", Connective::dia)) return dia(parse_unary());
    if (accept("[]", Connective::box)) return box(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    static const std::vector<std::string> kExpected = {"atom", "metavariable", "'('", "unary connective"};
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input", kExpected);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Formula inner = parse_iff();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError(pos_, "unbalanced parenthesis", {"')'"});
      ++pos_;
      return inner;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                     std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return atom(std::string(text_.substr(start, pos_ - start)));
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (pos_ + 1 < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))
        throw ParseError(pos_, "metavariables are single uppercase letters", kExpected);
      ++pos_;
      return mvar(c);
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'", kExpected);
  }

  std::string_view text_;
  Language lang_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text, Language lang = Language::discursive) {
  return detail::Parser(text, lang).parse_all();
}

// ---------------------------------------------------------------------------
// Schemes

using Substitution = std::map<char, Formula>;

class SubstitutionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Formula substitute(const Formula& scheme, const Substitution& sigma) {
  if (scheme.op() == Connective::metavar) {
    auto it = sigma.find(scheme.name()[0]);
    if (it == sigma.end())
      throw SubstitutionError("substitution does not cover metavariable " + scheme.name());
    return it->second;
  }
  if (scheme.op() == Connective::atom) return scheme;
  if (scheme.arity() == 1) return Formula::unary(scheme.op(), substitute(scheme.child(), sigma));
  return Formula::binary(scheme.op(), substitute(scheme.lhs(), sigma), substitute(scheme.rhs(), sigma));
}

/// The substitution sending the scheme's metavariables, in first-occurrence
/// order, to the atoms p, q, r.
inline Substitution canonical_substitution(const Formula& scheme) {
  static const char* const kFresh[] = {"p", "q", "r"};
  const auto vars = metavariables(scheme);
  if (vars.size() > 3)
    throw SubstitutionError("canonical instances support at most 3 metavariables, got " +
                            std::to_string(vars.size()));
  Substitution sigma;
  for (std::size_t i = 0; i < vars.size(); ++i) sigma.emplace(vars[i], atom(kFresh[i]));
  return sigma;
}

inline Formula canonical_instance(const Formula& scheme) {
  return substitute(scheme, canonical_substitution(scheme));
}

}  // namespace d2lab
