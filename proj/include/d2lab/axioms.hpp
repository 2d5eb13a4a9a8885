#pragma once

// The two Hilbert-style axiomatizations of D2: D (da Costa, Dubikajtis,
// Kotas; DDK1..DDK22) and C (Ciuciura; C1..C15). Both use modus ponens for
// discussive implication as the only rule. Metavariables A, B, C stand for
// the schematic letters alpha, beta, gamma.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d2lab/formula.hpp"

namespace d2lab {

struct Axiom {
  std::string id;
  Formula scheme;
};

struct AxiomSystem {
  std::string id;
  std::vector<Axiom> axioms;

  const Axiom* find(std::string_view axiom_id) const {
    for (const auto& a : axioms)
      if (a.id == axiom_id) return &a;
    return nullptr;
  }
};

namespace detail {

struct AxiomText {
  std::string_view id;
  std::string_view text;
};

inline constexpr std::array<AxiomText, 22> kSystemD = {{
    {"DDK1", "A => (B => A)"},
    {"DDK2", "(A => (B => C)) => ((A => B) => (A => C))"},
    {"DDK3", "((A => B) => A) => A"},
    {"DDK4", "(A ^ B) => A"},
    {"DDK5", "(A ^ B) => B"},
    {"DDK6", "A => (B => (A ^ B))"},
    {"DDK7", "A => (A | B)"},
    {"DDK8", "B => (A | B)"},
    {"DDK9", "(A => C) => ((B => C) => ((A | B) => C))"},
    {"DDK10", "A => ~~A"},
    {"DDK11", "~~A => A"},
    {"DDK12", "~(A | ~A) => B"},
    {"DDK13", "~(A | B) => ~(B | A)"},
    {"DDK14", "~(A | B) => (~B ^ ~A)"},
    {"DDK15", "~(~~A | B) => ~(A | B)"},
    // Negation scopes over the whole inner implication, as nested in the source.
    {"DDK16", "~((A | B) => C) => ((~A => B) | C)"},
    {"DDK17", "~((A | B) | C) => ~(A | (B | C))"},
    {"DDK18", "~((A => B) | C) => (A ^ ~(B | C))"},
    {"DDK19", "~((A ^ B) | C) => (A => ~(B | C))"},
    {"DDK20", "~(~(A | B) | C) => (~(~A | C) | ~(~B | C))"},
    {"DDK21", "~(~(A => B) | C) => (A => ~(~B | C))"},
    {"DDK22", "~(~(A ^ B) | C) => (A ^ ~(~B | C))"},
}};

inline constexpr std::array<AxiomText, 15> kSystemC = {{
    {"C1", "A => (B => A)"},
    {"C2", "(A => (B => C)) => ((A => B) => (A => C))"},
    {"C3", "(A ^ B) => A"},
    {"C4", "(A ^ B) => B"},
    {"C5", "A => (B => (A ^ B))"},
    {"C6", "A => (A | B)"},
    {"C7", "B => (A | B)"},
    {"C8", "(A => C) => ((B => C) => ((A | B) => C))"},
    {"C9", "A | (A => B)"},
    {"C10", "~(~A ^ (~~A ^ ~(A | ~A)))"},
    {"C11", "~(~A ^ (~B ^ ~(A | B))) => ~(~A ^ (~B ^ (~C ^ ~(A | (B | C)))))"},
    {"C12", "~(~A ^ (~B ^ (~C ^ ~(A | (B | C))))) => ~(~A ^ (~C ^ (~B ^ ~(A | (C | B)))))"},
    {"C13", "~(~A ^ (~B ^ (~C ^ ~(A | (B | C))))) => ((A | (B | ~C)) => (A | B))"},
    {"C14", "~(~A ^ ~B) => (A | B)"},
    {"C15", "(A | (B | ~B)) => ~(~A ^ ~(B | ~B))"},
}};

template <std::size_t N>
AxiomSystem build_system(std::string id, const std::array<AxiomText, N>& table) {
  AxiomSystem sys{std::move(id), {}};
  sys.axioms.reserve(N);
  for (const auto& entry : table)
    sys.axioms.push_back({std::string(entry.id), parse(entry.text, Language::discursive)});
  return sys;
}

}  // namespace detail

/// "C" or "D"; throws std::invalid_argument otherwise.
inline const AxiomSystem& axiom_system(std::string_view id) {
  static const AxiomSystem kC = detail::build_system("C", detail::kSystemC);
  static const AxiomSystem kD = detail::build_system("D", detail::kSystemD);
  if (id == "C") return kC;
  if (id == "D") return kD;
  throw std::invalid_argument("unknown axiom system '" + std::string(id) + "' (expected C or D)");
}

/// Looks up an axiom by id (e.g. "DDK10", "C13") in either system.
inline std::optional<Axiom> find_axiom(std::string_view axiom_id) {
  for (const char* sys : {"D", "C"})
    if (const Axiom* a = axiom_system(sys).find(axiom_id)) return *a;
  return std::nullopt;
}

/// Resolves a list of axiom ids or whole-system names into axioms, in order.
inline std::vector<Axiom> resolve_axioms(const std::vector<std::string>& names) {
  std::vector<Axiom> out;
  for (const auto& name : names) {
    if (name == "C" || name == "D") {
      const auto& sys = axiom_system(name);
      out.insert(out.end(), sys.axioms.begin(), sys.axioms.end());
    } else if (auto a = find_axiom(name)) {
      out.push_back(*a);
    } else {
      throw std::invalid_argument("unknown axiom id '" + name + "'");
    }
  }
  return out;
}

}  // namespace d2lab
