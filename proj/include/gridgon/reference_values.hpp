#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace gridgon::reference {

struct term {
  int n;
  long long value;
  bool proved;
};

// Maximal squared-length sums; from n = 7 on these are the best known values.
inline const std::vector<term> a_terms{
    {2, 4, true},        {3, 10, true},       {4, 36, true},       {5, 98, true},       {6, 232, true},
    {7, 462, false},     {8, 842, false},     {9, 1424, false},    {10, 2242, false},   {11, 3378, false},
    {12, 4920, false},   {13, 6906, false},   {14, 9436, false},   {15, 12638, false},  {16, 16560, false},
    {17, 21318, false},  {18, 27066, false},  {19, 33884, false},  {20, 41884, false},
};

// Same for polygons without straight angles.
inline const std::vector<term> a0_terms{
    {2, 4, true},     {3, 0, true},     {4, 20, true},     {5, 0, true},      {6, 142, true},
    {7, 346, false},  {8, 656, false},  {9, 1180, false},  {10, 1808, false}, {11, 2810, false},
    {12, 3552, false},
};

// Fjord counts (p, q) of the best known polygon, with ties, for n = 5..20.
inline const std::vector<std::pair<int, std::vector<std::pair<int, int>>>> fjord_row{
    {5, {{1, 1}}},  {6, {{1, 1}}},  {7, {{1, 2}}},          {8, {{2, 2}}},  {9, {{2, 2}}},  {10, {{2, 2}}},
    {11, {{2, 3}, {3, 3}}},         {12, {{3, 3}}},         {13, {{3, 3}}}, {14, {{3, 4}}}, {15, {{4, 4}}},
    {16, {{4, 4}}}, {17, {{4, 5}}}, {18, {{5, 5}}},         {19, {{5, 5}}}, {20, {{5, 6}}},
};

inline std::optional<long long> a_value(int n) {
  for (const auto& t : a_terms)
    if (t.n == n) return t.value;
  return std::nullopt;
}

inline std::optional<long long> a0_value(int n) {
  for (const auto& t : a0_terms)
    if (t.n == n) return t.value;
  return std::nullopt;
}

inline std::optional<std::vector<std::pair<int, int>>> fjords(int n) {
  for (const auto& [m, v] : fjord_row)
    if (m == n) return v;
  return std::nullopt;
}

}  // namespace gridgon::reference
