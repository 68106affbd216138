#include <doctest.h>

#include <set>

#include "gridgon/constructions.hpp"
#include "gridgon/geometry.hpp"
#include "test_support.hpp"

using namespace gridgon;
using gridgon::testing::unit_square;

namespace {

bool has(const validation_report& r, violation_kind k) {
  for (const auto& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

tour rotated_start(const tour& t, std::size_t k) {
  tour out{t.n, {}};
  for (std::size_t i = 0; i < t.order.size(); ++i) out.order.push_back(t.order[(i + k) % t.order.size()]);
  return out;
}

// 3x3 border walk with the centre visited last; (2,1) is a straight angle
tour border_with_centre() { return {3, {{1, 1}, {2, 1}, {3, 1}, {3, 2}, {3, 3}, {2, 3}, {1, 3}, {1, 2}, {2, 2}}}; }

}  // namespace

TEST_CASE("orientation is exact on large coordinates") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == 1);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == -1);
  CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == 0);
  CHECK(orientation({-2000000000, -2000000000}, {2000000000, 2000000000}, {2000000000, 1999999999}) == -1);
}

TEST_CASE("segment contact classification") {
  CHECK(segment_contact({1, 1}, {3, 3}, {1, 3}, {3, 1}) == contact::crossing);
  CHECK(segment_contact({1, 1}, {3, 1}, {2, 1}, {4, 1}) == contact::overlap);
  CHECK(segment_contact({1, 1}, {3, 1}, {3, 1}, {4, 2}) == contact::touch);
  CHECK(segment_contact({1, 1}, {3, 1}, {2, 1}, {2, 3}) == contact::touch);
  CHECK(segment_contact({1, 1}, {2, 1}, {3, 1}, {4, 1}) == contact::none);
  CHECK(segment_contact({1, 1}, {2, 2}, {1, 2}, {1, 3}) == contact::none);
}

TEST_CASE("shared endpoints conflict only along a common ray") {
  CHECK_FALSE(segments_conflict({{1, 1}, {2, 1}}, {{2, 1}, {2, 2}}, true));
  CHECK_FALSE(segments_conflict({{1, 1}, {2, 1}}, {{2, 1}, {3, 1}}, true));
  CHECK(segments_conflict({{1, 1}, {3, 1}}, {{3, 1}, {2, 1}}, true));
  CHECK(segments_conflict({{1, 1}, {2, 1}}, {{2, 1}, {2, 2}}, false));
}

TEST_CASE("unit square") {
  tour t = unit_square();
  auto r = validate_tour(t, false);
  CHECK(r.valid);
  CHECK(r.violations.empty());
  CHECK(validate_tour(t, true).valid);
  CHECK(score(t, weight::euclid_sq) == 4);
  CHECK(score(t, weight::manhattan) == 4);
}

TEST_CASE("crossing tour") {
  tour t{2, {{1, 1}, {2, 2}, {1, 2}, {2, 1}}};
  auto r = validate_tour(t, false);
  CHECK_FALSE(r.valid);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].kind == violation_kind::edge_crossing);
  CHECK(r.violations[0].indices == std::vector<std::size_t>{0, 2});
}

TEST_CASE("duplicate and missing points") {
  tour t{2, {{1, 1}, {2, 1}, {2, 1}, {1, 2}}};
  auto r = validate_tour(t, false);
  CHECK(has(r, violation_kind::duplicate_point));
  CHECK(has(r, violation_kind::missing_point));
  tour outside{2, {{1, 1}, {2, 1}, {3, 2}, {1, 2}}};
  auto r2 = validate_tour(outside, false);
  CHECK(has(r2, violation_kind::missing_point));
  tour short_tour{2, {{1, 1}, {2, 1}, {2, 2}}};
  CHECK(has(validate_tour(short_tour, false), violation_kind::missing_point));
}

TEST_CASE("foldback, overlap and vertex on edge") {
  tour fold{3, {{1, 1}, {3, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {2, 3}, {1, 3}, {1, 2}}};
  auto r = validate_tour(fold, false);
  CHECK(has(r, violation_kind::foldback));
  tour through{3, {{1, 1}, {3, 1}, {3, 2}, {2, 1}, {2, 2}, {3, 3}, {2, 3}, {1, 3}, {1, 2}}};
  CHECK(has(validate_tour(through, false), violation_kind::vertex_on_edge));
}

TEST_CASE("straight angles only matter in proper mode") {
  tour t = border_with_centre();
  CHECK(validate_tour(t, false).valid);
  auto r = validate_tour(t, true);
  CHECK_FALSE(r.valid);
  CHECK(has(r, violation_kind::straight_angle));
  for (const auto& v : r.violations) CHECK(v.kind == violation_kind::straight_angle);
}

TEST_CASE("per-edge weight relation") {
  for (int dx = 0; dx <= 6; ++dx)
    for (int dy = 0; dy <= 6; ++dy) {
      if (dx == 0 && dy == 0) continue;
      auto s = edge_weight({1, 1}, {1 + dx, 1 + dy}, weight::euclid_sq);
      auto s0 = edge_weight({1, 1}, {1 + dx, 1 + dy}, weight::manhattan);
      CHECK(s == dx * dx + dy * dy);
      CHECK(s0 == dx + dy);
      if (std::max(dx, dy) >= 2) CHECK(s >= s0);
      if (dx + dy == 1) CHECK((s == 1 && s0 == 1));
    }
}

TEST_CASE("dihedral group acts on the grid") {
  for (auto g : all_dihedral)
    for (int n = 2; n <= 5; ++n) {
      std::set<point> image;
      for (int y = 1; y <= n; ++y)
        for (int x = 1; x <= n; ++x) {
          point p = apply_dihedral(n, {x, y}, g);
          CHECK(in_grid(n, p));
          image.insert(p);
        }
      CHECK(image.size() == std::size_t(n * n));
    }
  CHECK(apply_dihedral(4, {1, 2}, dihedral::rot90) == point{3, 1});
  CHECK(apply_dihedral(4, apply_dihedral(4, {1, 2}, dihedral::rot90), dihedral::rot270) == point{1, 2});
}

TEST_CASE("score and verdict are invariant under symmetry, reversal and start shift") {
  std::vector<std::pair<tour, bool>> samples{{unit_square(), true},
                                             {border_with_centre(), false},
                                             {border_with_centre(), true},
                                             {{2, {{1, 1}, {2, 2}, {1, 2}, {2, 1}}}, false},
                                             {first_approximation(7), false},
                                             {fjord_polygon(9, 2, 2), false},
                                             {serpentine(8, rational(1, 3)), true},
                                             {proper_polygon(6), true}};
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    auto path = gridgon::testing::random_valid_tour(4, false, rng);
    if (!path.empty()) samples.push_back({{4, path}, true});
  }
  for (const auto& [t, proper] : samples)
    for (auto w : {weight::euclid_sq, weight::manhattan}) {
      bool valid = validate_tour(t, proper).valid;
      auto s = score(t, w);
      CHECK(score(reversed(t), w) == s);
      CHECK(validate_tour(reversed(t), proper).valid == valid);
      CHECK(score(rotated_start(t, 3), w) == s);
      CHECK(validate_tour(rotated_start(t, 3), proper).valid == valid);
      for (auto g : all_dihedral) {
        tour u = apply_dihedral(t, g);
        CHECK(score(u, w) == s);
        CHECK(validate_tour(u, proper).valid == valid);
        CHECK(validate_tour(u, proper).violations.size() == validate_tour(t, proper).violations.size());
      }
    }
}
