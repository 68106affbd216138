#include "gridgon/constructions.hpp"

#include <algorithm>
#include <array>

namespace gridgon {

const char* construction_name(construction_kind k) {
  switch (k) {
    case construction_kind::serpentine: return "serpentine";
    case construction_kind::first_approx: return "first";
    case construction_kind::fjord: return "fjord";
    case construction_kind::proper: return "proper";
  }
  return "unknown";
}

std::optional<construction_kind> parse_construction_kind(const std::string& s) {
  if (s == "serpentine") return construction_kind::serpentine;
  if (s == "first" || s == "first_approx" || s == "first_approximation") return construction_kind::first_approx;
  if (s == "fjord") return construction_kind::fjord;
  if (s == "proper") return construction_kind::proper;
  return std::nullopt;
}

namespace {

// Diagonals parallel to the main diagonal. D_k (upper triangle) and E_k
// (lower triangle) hold k points, indexed by t = 1..k from the bottom left.
point upper_diag(int n, int k, int t) { return {t, t + n - k}; }
point lower_diag(int n, int k, int t) { return {t + n - k, t}; }

int ceil_third(int k) { return (k + 2) / 3; }

std::vector<point> fjord_path(int n, int p, int q) {
  std::vector<point> path;
  path.reserve(std::size_t(n) * n);
  // a right fjord takes the second point of D_{k+1}, a bottom fjord that of E_k
  auto up_taken = [&](int k1) { return k1 >= 3 && k1 <= q + 2; };
  auto low_taken = [&](int k) { return k >= 3 && k <= p + 2; };
  int cur = 2;
  for (int k = 2; k < n; ++k) {
    int off = up_taken(k + 1) ? 1 : 0;
    int j = ceil_third(k - off);
    for (int t = cur; t <= k - j + 1; ++t) path.push_back(upper_diag(n, k, t));
    for (int i = 1; i <= j; ++i) {
      if (i > 1) path.push_back(upper_diag(n, k, k - j + i));
      path.push_back(upper_diag(n, k + 1, i + 1 + off));
    }
    cur = j + 2 + off;
  }
  for (int k = n - 1; k >= 2; --k) {
    int off = low_taken(k) ? 1 : 0;
    int j = ceil_third(k - off);
    for (int t = cur; t <= k - j + 2; ++t) path.push_back(lower_diag(n, k + 1, t));
    for (int i = 1; i <= j; ++i) {
      if (i > 1) path.push_back(lower_diag(n, k + 1, k - j + 1 + i));
      path.push_back(lower_diag(n, k, 1 + i + off));
    }
    cur = j + 2 + off;
  }
  for (int x = n; x > p + 1; --x) path.push_back({x, 1});
  for (int i = p; i >= 1; --i) {
    path.push_back({i + 1, 1});
    path.push_back({n - p - 1 + i, 2});
  }
  path.push_back({1, 1});
  for (int i = 1; i <= q; ++i) {
    path.push_back({2, n - q - 1 + i});
    path.push_back({1, i + 1});
  }
  for (int y = q + 2; y <= n; ++y) path.push_back({1, y});
  return path;
}

// Same skeleton as fjord_path with p = q = n-3, but each diagonal is split
// roughly in half and consecutive strips are joined by links of at most one
// unit step, so no interior vertex is straight.
std::vector<point> half_split_path(int n) {
  std::vector<point> path;
  path.reserve(std::size_t(n) * n);
  int cur = 2, prev_j = 0, prev_off = 0;
  auto pick = [](int lo, int bal) { return std::max(0, bal > lo ? lo + 1 : lo); };
  for (int k = 2; k < n; ++k) {
    int off = k + 1 <= n - 1 ? 1 : 0;
    int j = k == 2 ? 0 : pick(k - prev_j - prev_off - 1, (k - 1 - off) / 2);
    j = std::min({j, k - off, k - cur + 1});
    for (int t = cur; t <= std::min(k, k - j + 1); ++t) path.push_back(upper_diag(n, k, t));
    for (int i = 1; i <= j; ++i) {
      if (i > 1) path.push_back(upper_diag(n, k, k - j + i));
      path.push_back(upper_diag(n, k + 1, i + 1 + off));
    }
    cur = j + 2 + off;
    prev_j = j;
    prev_off = off;
  }
  for (int k = n - 1; k >= 2; --k) {
    int off = k >= 3 ? 1 : 0;
    int j = pick(k - prev_j - prev_off, (k - off) / 2);
    j = std::min({j, k - 1 - off, k + 3 - cur});
    for (int t = cur; t <= std::min(k + 1, k - j + 2); ++t) path.push_back(lower_diag(n, k + 1, t));
    for (int i = 1; i <= j; ++i) {
      if (i > 1) path.push_back(lower_diag(n, k + 1, k - j + 1 + i));
      path.push_back(lower_diag(n, k, 1 + i + off));
    }
    cur = j + 2 + off;
    prev_j = j;
    prev_off = off;
  }
  if (std::find(path.begin(), path.end(), point{n, 2}) == path.end()) path.push_back({n, 2});
  int p = n - 3, q = n - 3;
  for (int x = n; x > p + 1; --x) path.push_back({x, 1});
  for (int i = p; i >= 1; --i) {
    path.push_back({i + 1, 1});
    path.push_back({n - p - 1 + i, 2});
  }
  path.push_back({1, 1});
  for (int i = 1; i <= q; ++i) {
    path.push_back({2, n - q - 1 + i});
    path.push_back({1, i + 1});
  }
  for (int y = q + 2; y <= n; ++y) path.push_back({1, y});
  return path;
}

bool straight_at(const std::vector<point>& c, std::size_t i) {
  std::size_t m = c.size();
  point a = c[(i + m - 1) % m], b = c[i], d = c[(i + 1) % m];
  return orientation(a, b, d) == 0;
}

// Replaces the order of the interior of a short window of the cycle by the
// best permutation that leaves no collinear vertex inside the window and
// keeps the polygon simple. Returns false when some straight angle survives.
bool remove_straight_angles(std::vector<point>& c, int max_window) {
  const std::size_t m = c.size();
  for (int round = 0; round < 400; ++round) {
    std::vector<std::size_t> straights;
    for (std::size_t i = 0; i < m; ++i)
      if (straight_at(c, i)) straights.push_back(i);
    if (straights.empty()) return true;
    bool fixed = false;
    for (int w = 7; w <= max_window && !fixed; ++w) {
      for (std::size_t i : straights) {
        std::int64_t best_val = -1;
        std::vector<std::size_t> best_idx;
        std::vector<point> best_seq;
        for (int s = int(i) - w + 2; s < int(i); ++s) {
          std::vector<std::size_t> idx(w);
          for (int t = 0; t < w; ++t) idx[t] = std::size_t((s + t + std::int64_t(m) * 2) % std::int64_t(m));
          std::vector<char> inside(m, 0);
          for (auto x : idx) inside[x] = 1;
          std::vector<segment> outside;
          for (std::size_t x = 0; x < m; ++x)
            if (!(inside[x] && inside[(x + 1) % m])) outside.push_back({c[x], c[(x + 1) % m]});
          point pre = c[(idx.front() + m - 1) % m], post = c[(idx.back() + 1) % m];
          std::vector<point> inner;
          for (int t = 1; t + 1 < w; ++t) inner.push_back(c[idx[t]]);
          std::sort(inner.begin(), inner.end());
          do {
            std::vector<point> seq;
            seq.push_back(c[idx.front()]);
            seq.insert(seq.end(), inner.begin(), inner.end());
            seq.push_back(c[idx.back()]);
            std::vector<point> full;
            full.push_back(pre);
            full.insert(full.end(), seq.begin(), seq.end());
            full.push_back(post);
            bool ok = true;
            for (std::size_t t = 1; t + 1 < full.size() && ok; ++t)
              if (orientation(full[t - 1], full[t], full[t + 1]) == 0) ok = false;
            if (!ok) continue;
            std::int64_t val = 0;
            for (std::size_t t = 0; t + 1 < seq.size(); ++t) val += edge_weight(seq[t], seq[t + 1], weight::euclid_sq);
            if (val <= best_val) continue;
            for (std::size_t a = 0; a + 1 < seq.size() && ok; ++a)
              for (std::size_t b = a + 1; b + 1 < seq.size() && ok; ++b)
                if (segments_conflict({seq[a], seq[a + 1]}, {seq[b], seq[b + 1]}, b == a + 1)) ok = false;
            for (std::size_t a = 0; a + 1 < seq.size() && ok; ++a) {
              segment e{seq[a], seq[a + 1]};
              for (const auto& f : outside) {
                int shared = (e.first == f.first) + (e.first == f.second) + (e.second == f.first) + (e.second == f.second);
                if (segments_conflict(e, f, shared == 1)) {
                  ok = false;
                  break;
                }
              }
            }
            if (!ok) continue;
            best_val = val;
            best_idx = idx;
            best_seq = seq;
          } while (std::next_permutation(inner.begin(), inner.end()));
        }
        if (best_val >= 0) {
          for (std::size_t t = 0; t < best_idx.size(); ++t) c[best_idx[t]] = best_seq[t];
          fixed = true;
          break;
        }
      }
    }
    if (!fixed) return false;
  }
  return false;
}

// Exhaustive search optimum for n = 4 (the only proper polygons below n = 6).
const std::array<point, 16> proper_four = {{{1, 1}, {1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 4}, {3, 3}, {3, 4},
                                            {4, 4}, {4, 3}, {3, 2}, {4, 2}, {4, 1}, {3, 1}, {2, 2}, {2, 1}}};

}  // namespace

// p, q and repair window for n = 7..11
constexpr std::array<std::array<int, 3>, 5> proper_fjords{{{3, 3, 11}, {4, 4, 9}, {5, 5, 9}, {6, 7, 9}, {7, 7, 9}}};

tour serpentine(int n, const rational& theta) {
  if (n < 4) throw error(errc::out_of_range, "serpentine requires n >= 4");
  if (theta <= 0 || theta >= rational(1, 2)) throw error(errc::out_of_range, "theta must lie in (0, 1/2)");
  rational nt = theta * n;
  const int m = (boost::multiprecision::numerator(nt) / boost::multiprecision::denominator(nt)).convert_to<int>();
  if (m < 1) throw error(errc::out_of_range, "floor(n*theta) must be at least 1");
  tour t{n, {}};
  auto& path = t.order;
  path.reserve(std::size_t(n) * n);
  for (int y = n - 2; y >= 1; --y) {
    for (int i = 1; i <= m; ++i) {
      path.push_back({n - m - 1 + i, y + 1});
      path.push_back({i, y});
    }
    if (y > 1)
      for (int x = m + 1; x < n - m; ++x) path.push_back({x, y});
  }
  for (int x = m + 1; x <= n; ++x) path.push_back({x, 1});
  for (int y = 2; y <= n; ++y) path.push_back({n, y});
  for (int x = n - 1; x >= 1; --x) path.push_back({x, n});
  for (int x = 1; x < n - m; ++x) path.push_back({x, n - 1});
  return t;
}

tour first_approximation(int n) {
  if (n < 5) throw error(errc::out_of_range, "first approximation requires n >= 5");
  return {n, fjord_path(n, 1, 1)};
}

tour fjord_polygon(int n, int p, int q) {
  check_fjord_range(n, p, q);
  return {n, fjord_path(n, p, q)};
}

tour proper_polygon(int n) {
  if (n < 2) throw error(errc::out_of_range, "proper polygon requires n >= 2");
  if (n == 2) return {2, {{1, 1}, {2, 1}, {2, 2}, {1, 2}}};
  if (n == 3 || n == 5) throw error(errc::no_proper_polygon, "no proper polygon exists for n = " + std::to_string(n));
  if (n == 4) return {4, std::vector<point>(proper_four.begin(), proper_four.end())};
  std::vector<point> path;
  int window = 9;
  if (n >= 7 && n <= 11) {
    // repaired fjord polygons beat the half split for small n
    const auto& f = proper_fjords[n - 7];
    path = fjord_path(n, f[0], f[1]);
    window = f[2];
  } else {
    path = half_split_path(n);
  }
  if (!remove_straight_angles(path, window))
    throw error(errc::infeasible_geometry, "straight angles could not be removed for n = " + std::to_string(n));
  return {n, std::move(path)};
}

tour construct(const construction_spec& s) {
  switch (s.kind) {
    case construction_kind::serpentine: return serpentine(s.n, s.theta);
    case construction_kind::first_approx: return first_approximation(s.n);
    case construction_kind::fjord: return fjord_polygon(s.n, s.p, s.q);
    case construction_kind::proper: return proper_polygon(s.n);
  }
  throw error(errc::invalid_input, "unknown construction");
}

std::optional<big> closed_form_score(const construction_spec& s) {
  switch (s.kind) {
    case construction_kind::serpentine: return serpentine_sum(s.n, s.theta);
    case construction_kind::first_approx:
      if (s.n < 5) throw error(errc::out_of_range, "first approximation requires n >= 5");
      return beta(s.n);
    case construction_kind::fjord: return fjord_sum(s.n, s.p, s.q);
    case construction_kind::proper: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace gridgon
