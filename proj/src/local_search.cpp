#include "gridgon/local_search.hpp"

#include <algorithm>
#include <random>

#include "gridgon/error.hpp"

namespace gridgon {

namespace {

struct candidate {
  move_kind kind;
  int a, b, c, d;
};

point at(const tour& t, int i) {
  int m = int(t.order.size());
  return t.order[((i % m) + m) % m];
}

// The edges starting at the given positions must not meet any other edge of t
// and, in proper mode, must not create straight angles.
bool edges_clean(const tour& t, const std::vector<int>& starts, bool proper) {
  const int m = int(t.order.size());
  for (int k : starts) {
    segment e{at(t, k), at(t, k + 1)};
    for (int f = 0; f < m; ++f) {
      if (f == k) continue;
      if (segments_conflict(e, {at(t, f), at(t, f + 1)}, true)) return false;
    }
    if (proper) {
      if (orientation(at(t, k - 1), at(t, k), at(t, k + 1)) == 0) return false;
      if (orientation(at(t, k), at(t, k + 1), at(t, k + 2)) == 0) return false;
    }
  }
  return true;
}

int position_of(const tour& t, point p) {
  return int(std::find(t.order.begin(), t.order.end(), p) - t.order.begin());
}

}  // namespace

std::int64_t two_opt_delta(const tour& t, int i, int j, weight w) {
  point a = at(t, i), b = at(t, i + 1), c = at(t, j), d = at(t, j + 1);
  return edge_weight(a, c, w) + edge_weight(b, d, w) - edge_weight(a, b, w) - edge_weight(c, d, w);
}

std::int64_t apply_two_opt(tour& t, int i, int j, weight w) {
  const int m = int(t.order.size());
  if (i < 0 || j >= m || j < i + 2 || (i == 0 && j == m - 1))
    throw error(errc::invalid_input, "2-opt indices must pick two non-adjacent edges");
  std::int64_t delta = two_opt_delta(t, i, j, w);
  std::reverse(t.order.begin() + i + 1, t.order.begin() + j + 1);
  return delta;
}

tour or_opt_result(const tour& t, int i, int len, int j, bool reversed) {
  const int m = int(t.order.size());
  if (len < 1 || i < 0 || i + len > m || j < 0 || j >= m - len)
    throw error(errc::invalid_input, "or-opt indices out of range");
  std::vector<point> seg(t.order.begin() + i, t.order.begin() + i + len);
  if (reversed) std::reverse(seg.begin(), seg.end());
  std::vector<point> rest(t.order.begin(), t.order.begin() + i);
  rest.insert(rest.end(), t.order.begin() + i + len, t.order.end());
  tour out{t.n, {}};
  out.order.reserve(m);
  out.order.insert(out.order.end(), rest.begin(), rest.begin() + j + 1);
  out.order.insert(out.order.end(), seg.begin(), seg.end());
  out.order.insert(out.order.end(), rest.begin() + j + 1, rest.end());
  return out;
}

improve_result improve(const tour& t, bool proper, weight w, std::uint64_t iteration_budget, std::uint64_t rng_seed,
                       const std::atomic<bool>* cancel) {
  if (!validate_tour(t, proper).valid) throw error(errc::invalid_input, "input tour fails validation");
  improve_result r{t, {}};
  tour& cur = r.result;
  const int m = int(cur.order.size());
  if (m < 4) return r;

  std::vector<candidate> cands;
  for (int i = 0; i < m; ++i)
    for (int j = i + 2; j < m; ++j)
      if (!(i == 0 && j == m - 1)) cands.push_back({move_kind::two_opt, i, j, 0, 0});
  for (int len = 1; len <= 3 && len + 2 <= m; ++len)
    for (int i = 0; i + len <= m; ++i)
      for (int j = 0; j < m - len; ++j)
        for (int rev = 0; rev < (len > 1 ? 2 : 1); ++rev) {
          // reinserting on the edge the segment was cut from is the identity
          if (j == i - 1 && !rev) continue;
          cands.push_back({move_kind::or_opt, i, len, j, rev});
        }

  std::int64_t current = score(cur, w);
  std::mt19937_64 rng(rng_seed);
  std::uint64_t accepted = 0;
  bool improved = true;
  while (improved && (iteration_budget == 0 || accepted < iteration_budget)) {
    improved = false;
    std::shuffle(cands.begin(), cands.end(), rng);
    for (const auto& c : cands) {
      if (cancel && cancel->load(std::memory_order_relaxed)) {
        r.cancelled = true;
        return r;
      }
      if (c.kind == move_kind::two_opt) {
        std::int64_t delta = two_opt_delta(cur, c.a, c.b, w);
        if (delta <= 0) continue;
        tour next = cur;
        apply_two_opt(next, c.a, c.b, w);
        if (!edges_clean(next, {c.a, c.b}, proper)) continue;
        cur = std::move(next);
        current += delta;
        r.log.push_back({move_kind::two_opt, {c.a, c.b}, delta});
      } else {
        int i = c.a, len = c.b, j = c.c;
        point prev = at(cur, i - 1), s0 = at(cur, i), s1 = at(cur, i + len - 1), next_pt = at(cur, i + len);
        if (prev == s1 || next_pt == s0) continue;
        tour next = or_opt_result(cur, i, len, j, c.d);
        // the changed edges start at prev, the new left neighbour and the segment end
        int p0 = position_of(next, prev);
        int ins = position_of(next, c.d ? s1 : s0) - 1;
        int end = ins + len;
        std::int64_t delta = score(next, w) - current;
        if (delta <= 0) continue;
        if (!edges_clean(next, {p0, ins, end}, proper)) continue;
        cur = std::move(next);
        current += delta;
        r.log.push_back({move_kind::or_opt, {i, len, j, c.d}, delta});
      }
      ++accepted;
      improved = true;
      break;
    }
  }
  return r;
}

}  // namespace gridgon
