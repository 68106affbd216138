#include "gridgon/exact_solver.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <numeric>

#include "gridgon/constructions.hpp"
#include "gridgon/error.hpp"

namespace gridgon {

namespace {

constexpr int permanently_blocked = 1 << 28;

class grid_graph {
 public:
  grid_graph(int n, weight w) : n_(n), count_(n * n) {
    for (int i = 0; i < count_; ++i) pts_.push_back({i % n + 1, i / n + 1});
    w_.assign(std::size_t(count_) * count_, 0);
    eid_.assign(std::size_t(count_) * count_, -1);
    for (int a = 0; a < count_; ++a)
      for (int b = a + 1; b < count_; ++b) {
        w_[idx(a, b)] = w_[idx(b, a)] = edge_weight(pts_[a], pts_[b], w);
        eid_[idx(a, b)] = eid_[idx(b, a)] = int(ends_.size());
        ends_.push_back({a, b});
      }
  }

  int n() const { return n_; }
  int count() const { return count_; }
  point at(int v) const { return pts_[v]; }
  int index(point p) const { return (p.y - 1) * n_ + (p.x - 1); }
  std::int64_t w(int a, int b) const { return w_[idx(a, b)]; }
  int edge(int a, int b) const { return eid_[idx(a, b)]; }
  int edges() const { return int(ends_.size()); }
  std::pair<int, int> ends(int e) const { return ends_[e]; }
  segment seg(int e) const { return {pts_[ends_[e].first], pts_[ends_[e].second]}; }

  // contains another lattice point
  bool through_lattice(int e) const {
    auto [a, b] = ends_[e];
    return std::gcd(std::abs(pts_[a].x - pts_[b].x), std::abs(pts_[a].y - pts_[b].y)) > 1;
  }

 private:
  std::size_t idx(int a, int b) const { return std::size_t(a) * count_ + b; }
  int n_, count_;
  std::vector<point> pts_;
  std::vector<std::int64_t> w_;
  std::vector<int> eid_;
  std::vector<std::pair<int, int>> ends_;
};

class branch_and_bound {
 public:
  branch_and_bound(int n, bool proper, weight wt, const search_budget& budget)
      : g_(n, wt), proper_(proper), budget_(budget) {
    const int E = g_.edges();
    conf_.assign(E, {});
    blocked_.assign(E, 0);
    for (int e = 0; e < E; ++e) {
      if (g_.through_lattice(e)) blocked_[e] = permanently_blocked;
      for (int f = e + 1; f < E; ++f)
        if (segments_conflict(g_.seg(e), g_.seg(f), true)) {
          conf_[e].push_back(f);
          conf_[f].push_back(e);
        }
    }
    // counterclockwise border position from (1,1); (1,1) itself is the start
    bpos_.assign(g_.count(), -1);
    int p = 0;
    for (int x = 1; x <= n; ++x) bpos_[g_.index({x, 1})] = p++;
    for (int y = 2; y <= n; ++y) bpos_[g_.index({n, y})] = p++;
    for (int x = n - 1; x >= 1; --x) bpos_[g_.index({x, n})] = p++;
    for (int y = n - 1; y >= 2; --y) bpos_[g_.index({1, y})] = p++;
    bpos_[0] = -1;
    used_.assign(g_.count(), 0);
    seen_.assign(g_.count(), 0);
  }

  void seed(const tour& t, std::int64_t value) {
    best_ = value;
    best_path_.clear();
    for (point q : t.order) best_path_.push_back(g_.index(q));
  }

  search_outcome run() {
    start_ = std::chrono::steady_clock::now();
    used_[0] = 1;
    path_ = {0};
    dfs(0, 0);
    search_outcome out;
    out.nodes_expanded = nodes_;
    out.elapsed_seconds = elapsed();
    out.cancelled = cancelled_;
    out.optimal = !aborted_;
    if (!best_path_.empty()) {
      out.best_value = best_;
      tour t{g_.n(), {}};
      for (int v : best_path_) t.order.push_back(g_.at(v));
      out.witness = std::move(t);
    } else {
      out.infeasible = !aborted_;
    }
    return out;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool out_of_budget() {
    if (aborted_) return true;
    if (budget_.max_nodes && nodes_ >= budget_.max_nodes) aborted_ = true;
    if (budget_.cancel && budget_.cancel->load(std::memory_order_relaxed)) aborted_ = cancelled_ = true;
    if ((nodes_ & 255) == 0 && budget_.max_seconds > 0 && elapsed() > budget_.max_seconds) aborted_ = true;
    return aborted_;
  }

  bool open(int a, int b) const { return blocked_[g_.edge(a, b)] == 0; }

  // LLONG_MIN when the remaining vertices cannot be threaded at all
  std::int64_t bound(std::int64_t pre, int head, int tail) {
    const int N = g_.count();
    std::int64_t s = 0;
    int unvisited = 0;
    for (int v = 0; v < N; ++v) {
      if (used_[v]) continue;
      ++unvisited;
      std::int64_t m1 = 0, m2 = 0;
      int deg = 0;
      for (int u = 0; u < N; ++u) {
        if (u == v || (used_[u] && u != head && u != tail) || !open(v, u)) continue;
        ++deg;
        std::int64_t x = g_.w(v, u);
        if (x > m1) {
          m2 = m1;
          m1 = x;
        } else if (x > m2) {
          m2 = x;
        }
      }
      if (deg < 2) return LLONG_MIN;
      s += m1 + m2;
    }
    for (int e : {head, tail}) {
      std::int64_t m1 = 0;
      int deg = 0;
      for (int u = 0; u < N; ++u)
        if (!used_[u] && open(e, u)) {
          ++deg;
          m1 = std::max(m1, g_.w(e, u));
        }
      if (deg < 1 && unvisited > 0) return LLONG_MIN;
      s += m1;
    }
    std::fill(seen_.begin(), seen_.end(), 0);
    std::vector<int> stack{head};
    seen_[head] = 1;
    int reached = 0;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < N; ++u)
        if (!seen_[u] && !used_[u] && open(v, u)) {
          seen_[u] = 1;
          ++reached;
          stack.push_back(u);
        }
    }
    if (reached < unvisited) return LLONG_MIN;
    return pre + s / 2;
  }

  void add_edge(int e, int d) {
    for (int f : conf_[e]) blocked_[f] += d;
  }

  bool straight(int a, int b, int c) const { return orientation(g_.at(a), g_.at(b), g_.at(c)) == 0; }

  void dfs(int head, std::int64_t pre) {
    ++nodes_;
    if (out_of_budget()) return;
    const int N = g_.count();
    const int depth = int(path_.size());
    const int start = path_[0];
    if (depth == N) {
      if (!open(head, start)) return;
      if (proper_ && (straight(path_[N - 2], head, start) || straight(head, start, path_[1]))) return;
      std::int64_t v = pre + g_.w(head, start);
      if (v > best_) {
        best_ = v;
        best_path_ = path_;
      }
      return;
    }
    if (bound(pre, head, start) <= best_) return;

    std::vector<std::pair<std::int64_t, int>> cand;
    for (int u = 0; u < N; ++u) {
      if (used_[u] || !open(head, u)) continue;
      if (proper_ && depth >= 2 && straight(path_[depth - 2], head, u)) continue;
      point pu = g_.at(u);
      if (depth == 1 && pu.y < pu.x) continue;
      if (bpos_[u] >= 0 && bfirst_ >= 0) {
        int b = bpos_[u];
        int dir = bsecond_ >= 0 ? (bsecond_ > bfirst_ ? 1 : -1) : (b > bfirst_ ? 1 : -1);
        if (dir > 0 ? b < blast_ : b > blast_) continue;
      }
      cand.push_back({-g_.w(head, u), u});
    }
    std::sort(cand.begin(), cand.end());
    for (auto [negw, u] : cand) {
      int e = g_.edge(head, u);
      used_[u] = 1;
      path_.push_back(u);
      add_edge(e, 1);
      int sf = bfirst_, ss = bsecond_, sl = blast_;
      if (bpos_[u] >= 0) {
        if (bfirst_ < 0) bfirst_ = bpos_[u];
        else if (bsecond_ < 0) bsecond_ = bpos_[u];
        blast_ = bpos_[u];
      }
      dfs(u, pre - negw);
      bfirst_ = sf;
      bsecond_ = ss;
      blast_ = sl;
      add_edge(e, -1);
      path_.pop_back();
      used_[u] = 0;
      if (aborted_) return;
    }
  }

  grid_graph g_;
  bool proper_;
  search_budget budget_;
  std::vector<std::vector<int>> conf_;
  std::vector<int> blocked_;
  std::vector<int> bpos_;
  std::vector<char> used_, seen_;
  std::vector<int> path_, best_path_;
  std::int64_t best_ = -1;
  int bfirst_ = -1, bsecond_ = -1, blast_ = -1;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false, cancelled_ = false;
  std::chrono::steady_clock::time_point start_;
};

std::optional<tour> best_construction(int n, bool proper, weight w) {
  std::vector<tour> options;
  try {
    if (proper) {
      options.push_back(proper_polygon(n));
    } else {
      options.push_back(first_approximation(n));
      if (n >= 7)
        for (const auto& c : optimal_fjords(n).choices) options.push_back(fjord_polygon(n, c.p, c.q));
    }
  } catch (const error&) {
  }
  std::optional<tour> best;
  for (auto& t : options)
    if (validate_tour(t, proper).valid && (!best || score(t, w) > score(*best, w))) best = t;
  return best;
}

void check_n(int n) {
  if (n < 2) throw error(errc::out_of_range, "n must be at least 2");
}

}  // namespace

search_outcome solve_exact(int n, bool proper, weight w, const search_budget& budget, const solve_options& options) {
  check_n(n);
  branch_and_bound bb(n, proper, w, budget);
  std::optional<tour> seed = options.seed;
  if (seed && (seed->n != n || !validate_tour(*seed, proper).valid))
    throw error(errc::invalid_input, "seed tour is not a valid polygon for this search");
  if (!seed && options.seed_from_constructions && n >= 5) seed = best_construction(n, proper, w);
  if (seed) bb.seed(*seed, score(*seed, w));
  return bb.run();
}

search_outcome brute_force_oracle(int n, bool proper, weight w) {
  if (n != 2 && n != 3) throw error(errc::out_of_range, "brute force oracle supports n = 2 and n = 3 only");
  auto t0 = std::chrono::steady_clock::now();
  std::vector<point> rest;
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= n; ++x)
      if (x != 1 || y != 1) rest.push_back({x, y});
  search_outcome out;
  std::int64_t best = -1;
  do {
    ++out.nodes_expanded;
    tour t{n, {{1, 1}}};
    t.order.insert(t.order.end(), rest.begin(), rest.end());
    if (!validate_tour(t, proper).valid) continue;
    std::int64_t s = score(t, w);
    if (s > best) {
      best = s;
      out.witness = t;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  out.optimal = true;
  out.infeasible = best < 0;
  out.best_value = std::max<std::int64_t>(best, 0);
  out.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::int64_t upper_bound(const partial_tour& partial, weight w) {
  const int n = partial.n;
  check_n(n);
  const auto& pre = partial.prefix;
  const int N = n * n;
  if (int(pre.size()) > N) throw error(errc::invalid_input, "prefix longer than the grid");
  std::vector<char> used(N, 0);
  for (point p : pre) {
    if (!in_grid(n, p)) throw error(errc::invalid_input, "prefix point outside the grid");
    char& u = used[(p.y - 1) * n + (p.x - 1)];
    if (u) throw error(errc::invalid_input, "prefix repeats a point");
    u = 1;
  }
  std::vector<segment> edges;
  std::int64_t prefix_score = 0;
  for (std::size_t i = 0; i + 1 < pre.size(); ++i) {
    edges.push_back({pre[i], pre[i + 1]});
    prefix_score += edge_weight(pre[i], pre[i + 1], w);
  }
  auto available = [&](point a, point b) {
    if (std::gcd(std::abs(a.x - b.x), std::abs(a.y - b.y)) > 1) return false;
    for (const auto& s : edges)
      if (segments_conflict({a, b}, s, true)) return false;
    return true;
  };
  auto at = [&](int v) { return point{v % n + 1, v / n + 1}; };
  const point head = pre.empty() ? point{} : pre.back(), tail = pre.empty() ? point{} : pre.front();

  if (!pre.empty() && int(pre.size()) == N) {
    if (N >= 3 && available(head, tail)) return prefix_score + edge_weight(head, tail, w);
    return prefix_score;
  }

  // two largest available weights from a to partners accepted by the filter
  auto top2 = [&](point a, auto&& partner) {
    std::int64_t m1 = 0, m2 = 0;
    for (int u = 0; u < N; ++u) {
      point b = at(u);
      if (b == a || !partner(u, b) || !available(a, b)) continue;
      std::int64_t x = edge_weight(a, b, w);
      if (x > m1) {
        m2 = m1;
        m1 = x;
      } else if (x > m2) {
        m2 = x;
      }
    }
    return std::pair{m1, m2};
  };
  auto unvisited = [&](int u, point) { return !used[u]; };
  auto unvisited_or_end = [&](int u, point b) { return !used[u] || b == head || b == tail; };

  std::int64_t s = 0;
  for (int v = 0; v < N; ++v)
    if (!used[v]) {
      auto [m1, m2] = top2(at(v), unvisited_or_end);
      s += m1 + m2;
    }
  if (pre.size() == 1) {
    // a lone start vertex still has two distinct edges to place
    auto [m1, m2] = top2(head, unvisited);
    s += m1 + m2;
  } else if (pre.size() > 1) {
    s += top2(head, unvisited).first + top2(tail, unvisited).first;
  }
  return prefix_score + s / 2;
}

}  // namespace gridgon
