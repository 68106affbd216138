#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace gridgon {

struct point {
  int x = 0;
  int y = 0;
  auto operator<=>(const point&) const = default;
};

// Cyclic order of the n*n grid points; the successor of the last point is the first.
struct tour {
  int n = 0;
  std::vector<point> order;
  bool operator==(const tour&) const = default;
};

enum class weight { euclid_sq, manhattan };

inline const char* weight_name(weight w) { return w == weight::euclid_sq ? "euclid" : "manhattan"; }

inline std::optional<weight> parse_weight(const std::string& s) {
  if (s == "euclid" || s == "euclid_sq" || s == "EUCLID_SQ") return weight::euclid_sq;
  if (s == "manhattan" || s == "MANHATTAN") return weight::manhattan;
  return std::nullopt;
}

enum class violation_kind {
  duplicate_point,
  missing_point,
  edge_crossing,
  edge_overlap,
  vertex_on_edge,
  foldback,
  straight_angle,
};

inline const char* violation_name(violation_kind k) {
  switch (k) {
    case violation_kind::duplicate_point: return "DUPLICATE_POINT";
    case violation_kind::missing_point: return "MISSING_POINT";
    case violation_kind::edge_crossing: return "EDGE_CROSSING";
    case violation_kind::edge_overlap: return "EDGE_OVERLAP";
    case violation_kind::vertex_on_edge: return "VERTEX_ON_EDGE";
    case violation_kind::foldback: return "FOLDBACK";
    case violation_kind::straight_angle: return "STRAIGHT_ANGLE";
  }
  return "UNKNOWN";
}

// Vertex indices for point and angle problems, edge indices otherwise.
// Edge i joins order[i] and order[i+1] (cyclically). A missing grid point
// carries the point itself and no index.
struct violation {
  violation_kind kind;
  std::vector<std::size_t> indices;
  point where{};
};

struct validation_report {
  bool valid = true;
  std::vector<violation> violations;
};

inline int orientation(point a, point b, point c) {
  using i64 = std::int64_t;
  i64 v = (i64(b.x) - a.x) * (i64(c.y) - a.y) - (i64(b.y) - a.y) * (i64(c.x) - a.x);
  return (v > 0) - (v < 0);
}

namespace detail {

inline bool in_box(point a, point b, point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline std::int64_t dot(point o, point a, point b) {
  using i64 = std::int64_t;
  return (i64(a.x) - o.x) * (i64(b.x) - o.x) + (i64(a.y) - o.y) * (i64(b.y) - o.y);
}

}  // namespace detail

enum class contact { none, crossing, overlap, touch };

// Classifies how the closed segments [a,b] and [c,d] meet, ignoring nothing.
inline contact segment_contact(point a, point b, point c, point d) {
  if (std::max(a.x, b.x) < std::min(c.x, d.x) || std::max(c.x, d.x) < std::min(a.x, b.x) ||
      std::max(a.y, b.y) < std::min(c.y, d.y) || std::max(c.y, d.y) < std::min(a.y, b.y))
    return contact::none;
  int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 == 0 && o2 == 0) {
    // collinear: compare the parameter intervals along the common line
    bool use_x = a.x != b.x || c.x != d.x;
    auto key = [&](point p) { return use_x ? p.x : p.y; };
    int lo = std::max(std::min(key(a), key(b)), std::min(key(c), key(d)));
    int hi = std::min(std::max(key(a), key(b)), std::max(key(c), key(d)));
    if (lo > hi) return contact::none;
    return lo < hi ? contact::overlap : contact::touch;
  }
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return contact::crossing;
  if ((o1 == 0 && detail::in_box(a, b, c)) || (o2 == 0 && detail::in_box(a, b, d)) ||
      (o3 == 0 && detail::in_box(c, d, a)) || (o4 == 0 && detail::in_box(c, d, b)))
    return contact::touch;
  return contact::none;
}

using segment = std::pair<point, point>;

inline bool segments_conflict(const segment& s1, const segment& s2, bool shared_endpoint_allowed) {
  auto [a, b] = s1;
  auto [c, d] = s2;
  int shared = (a == c) + (a == d) + (b == c) + (b == d);
  if (shared_endpoint_allowed && shared == 1) {
    point p = (a == c || a == d) ? a : b;
    point q1 = p == a ? b : a;
    point q2 = p == c ? d : c;
    // the only way to meet elsewhere is to run along the same ray
    return orientation(p, q1, q2) == 0 && detail::dot(p, q1, q2) > 0;
  }
  return segment_contact(a, b, c, d) != contact::none;
}

inline std::int64_t edge_weight(point a, point b, weight w) {
  std::int64_t dx = std::abs(std::int64_t(a.x) - b.x), dy = std::abs(std::int64_t(a.y) - b.y);
  return w == weight::euclid_sq ? dx * dx + dy * dy : dx + dy;
}

inline std::int64_t score(const tour& t, weight w = weight::euclid_sq) {
  std::int64_t s = 0;
  std::size_t m = t.order.size();
  for (std::size_t i = 0; i < m; ++i) s += edge_weight(t.order[i], t.order[(i + 1) % m], w);
  return s;
}

inline bool in_grid(int n, point p) { return 1 <= p.x && p.x <= n && 1 <= p.y && p.y <= n; }

inline validation_report validate_tour(const tour& t, bool proper) {
  validation_report r;
  const int n = t.n;
  const auto& ord = t.order;
  const std::size_t m = ord.size();
  auto add = [&](violation_kind k, std::vector<std::size_t> idx, point where = {}) {
    r.violations.push_back({k, std::move(idx), where});
  };

  // permutation check
  std::vector<std::vector<std::size_t>> seen(std::size_t(std::max(n, 0)) * std::max(n, 0));
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_grid(n, ord[i])) {
      add(violation_kind::missing_point, {i}, ord[i]);
      continue;
    }
    seen[std::size_t(ord[i].y - 1) * n + (ord[i].x - 1)].push_back(i);
  }
  for (std::size_t k = 0; k < seen.size(); ++k) {
    point p{int(k % n) + 1, int(k / n) + 1};
    if (seen[k].empty()) add(violation_kind::missing_point, {}, p);
    else if (seen[k].size() > 1) add(violation_kind::duplicate_point, seen[k], p);
  }

  if (m >= 3) {
    for (std::size_t i = 0; i < m; ++i) {
      point a = ord[i], b = ord[(i + 1) % m];
      if (a == b) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        point c = ord[j], d = ord[(j + 1) % m];
        if (c == d) continue;
        bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
        if (adjacent) {
          // shared vertex v with far ends u, w
          point v = j == i + 1 ? b : a;
          point u = j == i + 1 ? a : b;
          point w = j == i + 1 ? d : c;
          if (orientation(u, v, w) == 0 && detail::dot(v, u, w) > 0) add(violation_kind::foldback, {i, j});
          continue;
        }
        switch (segment_contact(a, b, c, d)) {
          case contact::none: break;
          case contact::crossing: add(violation_kind::edge_crossing, {i, j}); break;
          case contact::overlap: add(violation_kind::edge_overlap, {i, j}); break;
          case contact::touch: add(violation_kind::vertex_on_edge, {i, j}); break;
        }
      }
    }
    if (proper) {
      for (std::size_t i = 0; i < m; ++i) {
        point a = ord[(i + m - 1) % m], b = ord[i], c = ord[(i + 1) % m];
        if (a == b || b == c) continue;
        if (orientation(a, b, c) == 0 && detail::dot(b, a, c) < 0) add(violation_kind::straight_angle, {i});
      }
    }
  }
  r.valid = r.violations.empty();
  return r;
}

enum class dihedral { identity, rot90, rot180, rot270, flip_x, flip_y, transpose, antitranspose };

inline constexpr dihedral all_dihedral[] = {dihedral::identity, dihedral::rot90,  dihedral::rot180,
                                            dihedral::rot270,   dihedral::flip_x, dihedral::flip_y,
                                            dihedral::transpose, dihedral::antitranspose};

inline point apply_dihedral(int n, point p, dihedral g) {
  int x = p.x, y = p.y, r = n + 1;
  switch (g) {
    case dihedral::identity: return {x, y};
    case dihedral::rot90: return {r - y, x};
    case dihedral::rot180: return {r - x, r - y};
    case dihedral::rot270: return {y, r - x};
    case dihedral::flip_x: return {r - x, y};
    case dihedral::flip_y: return {x, r - y};
    case dihedral::transpose: return {y, x};
    case dihedral::antitranspose: return {r - y, r - x};
  }
  return p;
}

inline tour apply_dihedral(const tour& t, dihedral g) {
  tour out{t.n, {}};
  out.order.reserve(t.order.size());
  for (point p : t.order) out.order.push_back(apply_dihedral(t.n, p, g));
  return out;
}

inline tour reversed(const tour& t) {
  tour out = t;
  std::reverse(out.order.begin(), out.order.end());
  return out;
}

}  // namespace gridgon
