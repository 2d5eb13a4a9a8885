#pragma once

// The thirteen published countermodel matrices, transcribed verbatim.
// P1..P12 are claimed to validate C while refuting DDK10 and DDK12..DDK22
// respectively; P13 is claimed to validate D while refuting C13. Tables
// whose negation is printed elsewhere share it: P5 with P1, P7/P11/P12 with
// P3, P8/P9 with P4.

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d2lab/matrix.hpp"

namespace d2lab {

struct PublishedClaim {
  std::string matrix_id;    // P1..P13
  int number;               // 1..13
  std::string system_id;    // system the matrix is claimed to validate
  std::string target_id;    // axiom the matrix is claimed to refute
};

namespace detail {

struct FixtureData {
  std::string_view id;
  int size;
  std::vector<Value> designated;
  std::vector<Value> neg, lor, dconj, dimp;
};

inline const std::vector<FixtureData>& fixture_data() {
  static const std::vector<Value> kNeg1 = {3, 3, 2};
  static const std::vector<Value> kNeg3 = {3, 2, 1};
  static const std::vector<Value> kNeg4 = {3, 1, 1};
  static const std::vector<FixtureData> kData = {
      {"P1", 3, {1, 3}, kNeg1,
       {3, 1, 3, 1, 2, 3, 3, 3, 3},
       {3, 2, 1, 2, 2, 2, 1, 2, 3},
       {3, 2, 3, 3, 1, 2, 1, 2, 3}},
      {"P2", 4, {2, 3, 4}, {4, 3, 4, 1},
       {1, 2, 3, 4, 2, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4, 4},
       {1, 1, 1, 1, 1, 3, 4, 4, 1, 3, 2, 2, 1, 4, 3, 4},
       {4, 2, 2, 4, 1, 3, 3, 3, 1, 4, 4, 3, 1, 2, 3, 3}},
      {"P3", 3, {1, 2}, kNeg3,
       {2, 1, 1, 2, 1, 2, 1, 2, 3},
       {1, 1, 3, 2, 2, 3, 3, 3, 3},
       {2, 1, 3, 1, 1, 3, 1, 1, 1}},
      {"P4", 3, {1, 2}, kNeg4,
       {2, 2, 1, 2, 2, 2, 1, 2, 3},
       {1, 1, 3, 1, 2, 3, 3, 3, 3},
       {1, 1, 3, 1, 2, 3, 1, 1, 1}},
      {"P5", 3, {1, 3}, kNeg1,
       {3, 1, 3, 1, 2, 3, 1, 3, 1},
       {1, 2, 1, 2, 2, 2, 3, 2, 3},
       {1, 2, 3, 3, 1, 3, 1, 2, 3}},
      {"P6", 4, {2, 3, 4}, {3, 2, 1, 4},
       {1, 2, 4, 4, 3, 4, 3, 2, 4, 3, 3, 2, 4, 2, 4, 4},
       {1, 1, 1, 1, 1, 2, 2, 4, 1, 3, 3, 2, 1, 2, 2, 2},
       {4, 2, 2, 2, 1, 4, 2, 2, 1, 2, 2, 4, 1, 4, 3, 3}},
      {"P7", 3, {1, 2}, kNeg3,
       {2, 1, 1, 1, 1, 2, 1, 2, 3},
       {1, 1, 3, 1, 2, 3, 3, 3, 3},
       {1, 1, 3, 1, 1, 3, 2, 1, 1}},
      {"P8", 3, {1, 2}, kNeg4,
       {2, 2, 1, 1, 1, 2, 1, 2, 3},
       {1, 2, 3, 2, 1, 3, 3, 3, 3},
       {1, 1, 3, 1, 1, 3, 2, 2, 2}},
      {"P9", 3, {1, 2}, kNeg4,
       {2, 2, 1, 1, 1, 2, 1, 2, 3},
       {1, 1, 3, 2, 2, 3, 3, 3, 3},
       {1, 1, 3, 2, 2, 3, 2, 1, 1}},
      {"P10", 3, {2, 3}, {3, 3, 1},
       {1, 2, 3, 2, 3, 3, 3, 3, 2},
       {1, 1, 1, 1, 2, 2, 1, 2, 3},
       {2, 3, 2, 1, 3, 2, 1, 2, 2}},
      {"P11", 3, {1, 2}, kNeg3,
       {2, 2, 1, 2, 1, 2, 1, 2, 3},
       {1, 1, 3, 1, 2, 3, 3, 3, 3},
       {2, 1, 3, 2, 1, 3, 2, 1, 2}},
      {"P12", 3, {1, 2}, kNeg3,
       {2, 1, 1, 1, 1, 2, 1, 2, 3},
       {1, 2, 3, 1, 1, 3, 3, 3, 3},
       {2, 1, 3, 2, 1, 3, 2, 1, 2}},
      {"P13", 4, {2, 3, 4}, {2, 1, 4, 3},
       {1, 2, 3, 4, 2, 2, 2, 2, 3, 2, 3, 2, 4, 2, 2, 4},
       {1, 1, 1, 1, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4},
       {2, 2, 2, 2, 1, 2, 3, 4, 1, 2, 3, 4, 1, 2, 3, 4}},
  };
  return kData;
}

}  // namespace detail

inline std::vector<std::string> fixture_ids() {
  std::vector<std::string> ids;
  for (const auto& d : detail::fixture_data()) ids.emplace_back(d.id);
  return ids;
}

/// Throws std::invalid_argument for an unknown id.
inline Matrix fixture_matrix(std::string_view id) {
  for (const auto& d : detail::fixture_data())
    if (d.id == id) return Matrix(d.size, d.designated, d.neg, d.lor, d.dconj, d.dimp);
  throw std::invalid_argument("unknown fixture matrix '" + std::string(id) + "' (expected P1..P13)");
}

inline const std::vector<PublishedClaim>& published_claims() {
  static const std::vector<PublishedClaim> kClaims = [] {
    static constexpr std::array<std::string_view, 12> kTargets = {
        "DDK10", "DDK12", "DDK13", "DDK14", "DDK15", "DDK16",
        "DDK17", "DDK18", "DDK19", "DDK20", "DDK21", "DDK22"};
    std::vector<PublishedClaim> claims;
    for (int i = 0; i < 12; ++i)
      claims.push_back({"P" + std::to_string(i + 1), i + 1, "C", std::string(kTargets[i])});
    claims.push_back({"P13", 13, "D", "C13"});
    return claims;
  }();
  return kClaims;
}

}  // namespace d2lab
