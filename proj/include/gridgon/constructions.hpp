#pragma once

#include <optional>
#include <string>

#include "gridgon/closed_forms.hpp"
#include "gridgon/geometry.hpp"

namespace gridgon {

enum class construction_kind { serpentine, first_approx, fjord, proper };

struct construction_spec {
  construction_kind kind = construction_kind::first_approx;
  int n = 0;
  rational theta = rational(1, 3);
  int p = 1;
  int q = 1;
};

const char* construction_name(construction_kind k);
std::optional<construction_kind> parse_construction_kind(const std::string& s);

// Row serpentine: zig-zag strips between the left floor(n*theta) columns of a
// row and the right side of the row above, closed along the border.
tour serpentine(int n, const rational& theta);

// Diagonal zig-zag; equal to the fjord polygon with one fjord on each side.
tour first_approximation(int n);

// p fjords on the bottom edge, q on the left column side of the upper triangle.
tour fjord_polygon(int n, int p, int q);

// Proper polygons satisfy score >= floor(n^4/4) - proper_cubic_constant * n^3
// for every n the generator accepts up to 60 (checked by the test suite).
inline constexpr long long proper_cubic_constant = 2;

// Half-split diagonal zig-zag with both border layers folded into V shapes
// (n = 6 and n >= 12) or a fixed fjord polygon (7 <= n <= 11); remaining
// straight angles are removed by a local reordering search.
tour proper_polygon(int n);

tour construct(const construction_spec& spec);

// Closed-form score of the construction where one exists (none for proper).
std::optional<big> closed_form_score(const construction_spec& spec);

}  // namespace gridgon
