#include <doctest.h>

#include <iterator>
#include <random>
#include <set>

#include "gridgon/constructions.hpp"
#include "gridgon/error.hpp"
#include "gridgon/local_search.hpp"
#include "test_support.hpp"

using namespace gridgon;

namespace {

// Replays the log from the start tour, checking every step.
void check_replay(const tour& start, const improve_result& r, bool proper, weight w) {
  tour cur = start;
  std::int64_t s = score(cur, w);
  for (const auto& m : r.log) {
    CHECK(m.delta > 0);
    if (m.kind == move_kind::two_opt) {
      CHECK(apply_two_opt(cur, m.indices[0], m.indices[1], w) == m.delta);
    } else {
      cur = or_opt_result(cur, m.indices[0], m.indices[1], m.indices[2], m.indices[3] != 0);
    }
    CHECK(score(cur, w) == s + m.delta);
    s += m.delta;
    CHECK(validate_tour(cur, proper).valid);
  }
  CHECK(cur == r.result);
}

}  // namespace

TEST_CASE("fjord polygon at n = 9 is a local optimum") {
  tour t = fjord_polygon(9, 2, 2);
  auto r = improve(t, false, weight::euclid_sq, 0, 1);
  CHECK(r.log.empty());
  CHECK(r.result == t);
}

TEST_CASE("unit square is unchanged") {
  tour t = gridgon::testing::unit_square();
  auto r = improve(t, false, weight::euclid_sq, 0, 3);
  CHECK(r.log.empty());
  CHECK(r.result == t);
}

TEST_CASE("serpentine improves monotonically and the log reconciles") {
  tour t = serpentine(7, rational(1, 3));
  for (std::uint64_t seed : {0u, 1u, 2u}) {
    auto r = improve(t, false, weight::euclid_sq, 0, seed);
    CHECK(score(r.result) >= score(t));
    CHECK(validate_tour(r.result, false).valid);
    std::int64_t sum = 0;
    for (const auto& m : r.log) sum += m.delta;
    CHECK(sum == score(r.result) - score(t));
    check_replay(t, r, false, weight::euclid_sq);
  }
}

TEST_CASE("improvement is deterministic per seed and budget") {
  tour t = serpentine(8, rational(1, 4));
  auto a = improve(t, false, weight::euclid_sq, 5, 42);
  auto b = improve(t, false, weight::euclid_sq, 5, 42);
  CHECK(a.result == b.result);
  CHECK(a.log.size() == b.log.size());
  CHECK(a.log.size() <= 5);
}

TEST_CASE("proper mode keeps polygons proper") {
  for (int n : {6, 8, 12}) {
    tour t = proper_polygon(n);
    auto r = improve(t, true, weight::euclid_sq, 0, 5);
    CHECK(validate_tour(r.result, true).valid);
    CHECK(score(r.result) >= score(t));
    check_replay(t, r, true, weight::euclid_sq);
  }
  tour s = serpentine(7, rational(1, 3));
  auto r = improve(s, false, weight::manhattan, 0, 9);
  check_replay(s, r, false, weight::manhattan);
}

TEST_CASE("invalid input is rejected") {
  tour crossing{2, {{1, 1}, {2, 2}, {1, 2}, {2, 1}}};
  CHECK_THROWS_AS(improve(crossing, false, weight::euclid_sq, 0, 0), gridgon::error);
  tour straight = serpentine(7, rational(1, 3));
  CHECK_THROWS_AS(improve(straight, true, weight::euclid_sq, 0, 0), gridgon::error);
}

TEST_CASE("cancel flag stops the descent") {
  std::atomic<bool> cancel{true};
  tour t = serpentine(7, rational(1, 3));
  auto r = improve(t, false, weight::euclid_sq, 0, 0, &cancel);
  CHECK(r.cancelled);
  CHECK(r.result == t);
}

TEST_CASE("2-opt incremental score matches recomputation") {
  std::mt19937_64 rng(5);
  tour t = first_approximation(8);
  const int m = int(t.order.size());
  std::int64_t s = score(t);
  for (int k = 0; k < 1000; ++k) {
    int i = int(rng() % m), j = int(rng() % m);
    if (i > j) std::swap(i, j);
    if (j < i + 2 || (i == 0 && j == m - 1)) continue;
    tour before = t;
    s += apply_two_opt(t, i, j, weight::euclid_sq);
    CHECK(s == score(t));
    // exactly two cyclic edges change
    std::multiset<std::pair<point, point>> e1, e2;
    for (int q = 0; q < m; ++q) {
      auto a = std::minmax(before.order[q], before.order[(q + 1) % m]);
      auto b = std::minmax(t.order[q], t.order[(q + 1) % m]);
      e1.insert({a.first, a.second});
      e2.insert({b.first, b.second});
    }
    std::vector<std::pair<point, point>> gone;
    std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(gone));
    CHECK(gone.size() <= 2);
  }
}

TEST_CASE("fjord polygons at the best counts admit no improving move for n = 9, 10") {
  for (int n = 9; n <= 10; ++n)
    for (const auto& c : optimal_fjords(n).choices) {
      tour t = fjord_polygon(n, c.p, c.q);
      auto r = improve(t, false, weight::euclid_sq, 0, std::uint64_t(n));
      CAPTURE(n);
      CHECK(r.log.empty());
    }
}

TEST_CASE("or-opt with a straight angle lifts the fjord polygons at n = 11, 12 by 4") {
  struct row { int n, p, q; std::int64_t from, to; };
  for (const row& e : {row{11, 2, 3, 3378, 3382}, row{11, 3, 3, 3378, 3382}, row{12, 3, 3, 4920, 4924}}) {
    tour t = fjord_polygon(e.n, e.p, e.q);
    REQUIRE(score(t) == e.from);
    auto r = improve(t, false, weight::euclid_sq, 0, std::uint64_t(e.n));
    CAPTURE(e.n);
    CHECK(validate_tour(r.result, false).valid);
    CHECK_FALSE(validate_tour(r.result, true).valid);
    CHECK(score(r.result) == e.to);
    check_replay(t, r, false, weight::euclid_sq);
  }
}
