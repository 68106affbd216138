#include <doctest.h>

#include <random>

#include "gridgon/error.hpp"
#include "gridgon/exact_solver.hpp"
#include "test_support.hpp"

using namespace gridgon;

namespace {

// Best closing score over all legal completions of the prefix, -1 if none.
std::int64_t best_completion(int n, std::vector<point>& path, std::vector<char>& used, weight w) {
  const int N = n * n;
  if (int(path.size()) == N) {
    tour t{n, path};
    return validate_tour(t, false).valid ? score(t, w) : -1;
  }
  std::int64_t best = -1;
  for (int v = 0; v < N; ++v) {
    if (used[v]) continue;
    point p{v % n + 1, v / n + 1};
    if (!gridgon::testing::edge_fits(path, path.back(), p)) continue;
    used[v] = 1;
    path.push_back(p);
    best = std::max(best, best_completion(n, path, used, w));
    path.pop_back();
    used[v] = 0;
  }
  return best;
}

}  // namespace

TEST_CASE("small exact values") {
  auto r2 = solve_exact(2, false, weight::euclid_sq);
  CHECK(r2.best_value == 4);
  CHECK(r2.optimal);
  REQUIRE(r2.witness);
  CHECK(validate_tour(*r2.witness, false).valid);

  auto r3 = solve_exact(3, false, weight::euclid_sq);
  CHECK(r3.best_value == 10);
  CHECK(r3.optimal);

  auto p3 = solve_exact(3, true, weight::euclid_sq);
  CHECK(p3.infeasible);
  CHECK(p3.best_value == 0);
  CHECK(p3.optimal);
  CHECK_FALSE(p3.witness);

  auto p4 = solve_exact(4, true, weight::euclid_sq);
  CHECK(p4.best_value == 20);
  CHECK(p4.optimal);
  REQUIRE(p4.witness);
  CHECK(validate_tour(*p4.witness, true).valid);
  CHECK(score(*p4.witness) == 20);
}

TEST_CASE("oracle equivalence on n = 2, 3") {
  for (int n : {2, 3})
    for (bool proper : {false, true})
      for (auto w : {weight::euclid_sq, weight::manhattan}) {
        CAPTURE(n);
        CAPTURE(proper);
        auto a = solve_exact(n, proper, w);
        auto b = brute_force_oracle(n, proper, w);
        CHECK(a.best_value == b.best_value);
        CHECK(a.infeasible == b.infeasible);
        CHECK(a.optimal);
        if (a.witness) CHECK(score(*a.witness, w) == a.best_value);
      }
  CHECK(brute_force_oracle(2, false, weight::euclid_sq).best_value == 4);
  CHECK(brute_force_oracle(3, false, weight::euclid_sq).best_value == 10);
  CHECK(brute_force_oracle(3, true, weight::euclid_sq).infeasible);
  CHECK_THROWS_AS(brute_force_oracle(4, false, weight::euclid_sq), gridgon::error);
}

TEST_CASE("node budgets are deterministic") {
  search_budget b;
  b.max_nodes = 2000;
  solve_options o;
  o.seed_from_constructions = false;
  auto a = solve_exact(4, false, weight::euclid_sq, b, o);
  auto c = solve_exact(4, false, weight::euclid_sq, b, o);
  CHECK_FALSE(a.optimal);
  CHECK(a.best_value == c.best_value);
  CHECK(a.nodes_expanded == c.nodes_expanded);
  CHECK(a.witness == c.witness);
  if (a.witness) CHECK(validate_tour(*a.witness, false).valid);
}

TEST_CASE("cancellation is observed") {
  std::atomic<bool> cancel{true};
  search_budget b;
  b.cancel = &cancel;
  auto r = solve_exact(5, false, weight::euclid_sq, b);
  CHECK(r.cancelled);
  CHECK_FALSE(r.optimal);
  REQUIRE(r.witness);
  CHECK(r.best_value == 98);
}

TEST_CASE("upper bound examples") {
  tour sq{2, {{1, 1}, {2, 1}, {2, 2}, {1, 2}}};
  CHECK(upper_bound({2, sq.order}, weight::euclid_sq) == 4);
  CHECK(upper_bound({2, {}}, weight::euclid_sq) >= 4);
  auto b3 = upper_bound({3, {}}, weight::euclid_sq);
  CHECK(b3 >= 10);
  CHECK(b3 <= 72);
  CHECK_THROWS_AS(upper_bound({3, {{1, 1}, {1, 1}}}, weight::euclid_sq), gridgon::error);
  CHECK_THROWS_AS(upper_bound({3, {{0, 1}}}, weight::euclid_sq), gridgon::error);
}

TEST_CASE("upper bound on complete tours is their score") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 30; ++k) {
    auto path = gridgon::testing::random_valid_tour(4, false, rng);
    if (path.empty()) continue;
    tour t{4, path};
    for (auto w : {weight::euclid_sq, weight::manhattan}) CHECK(upper_bound({4, path}, w) == score(t, w));
  }
}

TEST_CASE("upper bound is admissible and monotone on random prefixes") {
  std::mt19937_64 rng(2024);
  const int n = 4, N = n * n;
  int admissibility = 0, monotonicity = 0, trials = 0;
  while (trials < 10000) {
    auto w = trials % 2 ? weight::manhattan : weight::euclid_sq;
    // random legal prefix by random walk
    std::vector<point> path{{int(rng() % n) + 1, int(rng() % n) + 1}};
    std::vector<char> used(N, 0);
    used[(path[0].y - 1) * n + path[0].x - 1] = 1;
    int len = 1 + int(rng() % (N - 1));
    while (int(path.size()) < len) {
      std::vector<point> next;
      for (int v = 0; v < N; ++v) {
        point p{v % n + 1, v / n + 1};
        if (!used[v] && gridgon::testing::edge_fits(path, path.back(), p)) next.push_back(p);
      }
      if (next.empty()) break;
      point p = next[rng() % next.size()];
      used[(p.y - 1) * n + p.x - 1] = 1;
      path.push_back(p);
    }
    ++trials;
    auto bound = upper_bound({n, path}, w);
    if (int(path.size()) >= 8) {
      auto best = best_completion(n, path, used, w);
      if (best > bound) ++admissibility;
    }
    for (int v = 0; v < N; ++v) {
      point p{v % n + 1, v / n + 1};
      if (used[v] || !gridgon::testing::edge_fits(path, path.back(), p)) continue;
      auto ext = path;
      ext.push_back(p);
      if (upper_bound({n, ext}, w) > bound) ++monotonicity;
    }
  }
  CHECK(admissibility == 0);
  CHECK(monotonicity == 0);
}

TEST_CASE("upper bound of the empty prefix dominates random valid tours") {
  std::mt19937_64 rng(99);
  auto bound = upper_bound({4, {}}, weight::euclid_sq);
  CHECK(bound >= 36);
  int seen = 0;
  for (int k = 0; k < 200; ++k) {
    auto path = gridgon::testing::random_valid_tour(4, false, rng);
    if (path.empty()) continue;
    ++seen;
    CHECK(score(tour{4, path}) <= bound);
  }
  CHECK(seen > 0);
}
