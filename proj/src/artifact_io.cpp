#include "gridgon/artifact_io.hpp"

#include <climits>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gridgon/closed_forms.hpp"
#include "gridgon/error.hpp"
#include "gridgon/reference_values.hpp"

namespace gridgon {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { throw error(errc::schema_error, msg); }

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

int require_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) schema(field + ": expected an integer");
  auto v = j.get<long long>();
  if (v < INT_MIN || v > INT_MAX) schema(field + ": integer out of range");
  return int(v);
}

}  // namespace

json tour_file_json(const tour_file& f) {
  json order = json::array();
  for (point p : f.t.order) order.push_back({p.x, p.y});
  return {{"format_version", tour_format_version},
          {"n", f.t.n},
          {"order", std::move(order)},
          {"annotations", f.annotations.is_null() ? json::object() : f.annotations}};
}

std::string dump_tour_file(const tour_file& f) { return tour_file_json(f).dump(2) + "\n"; }

tour_file tour_file_from_json(const json& j) {
  if (!j.is_object()) schema("document: expected an object");
  for (const char* key : {"format_version", "n", "order"})
    if (!j.contains(key)) schema(std::string(key) + ": missing");
  int version = require_int(j["format_version"], "format_version");
  if (version != tour_format_version)
    schema("format_version: unsupported version " + std::to_string(version));
  tour_file f;
  int n = require_int(j["n"], "n");
  if (n < 1) schema("n: must be at least 1");
  const json& order = j["order"];
  if (!order.is_array()) schema("order: expected an array");
  std::size_t expected = std::size_t(n) * n;
  if (order.size() != expected)
    schema("order: expected " + std::to_string(expected) + " points, found " + std::to_string(order.size()));
  f.t.n = n;
  f.t.order.reserve(expected);
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string field = "order[" + std::to_string(i) + "]";
    const json& p = order[i];
    if (!p.is_array() || p.size() != 2) schema(field + ": expected an [x, y] pair");
    int x = require_int(p[0], field + "[0]");
    int y = require_int(p[1], field + "[1]");
    if (x < 1 || x > n || y < 1 || y > n)
      schema(field + ": coordinate (" + std::to_string(x) + "," + std::to_string(y) + ") outside [1," +
             std::to_string(n) + "]");
    f.t.order.push_back({x, y});
  }
  if (j.contains("annotations")) {
    if (!j["annotations"].is_object()) schema("annotations: expected an object");
    f.annotations = j["annotations"];
  }
  return f;
}

tour_file parse_tour_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    throw error(errc::parse_error,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  return tour_file_from_json(j);
}

void write_tour(const tour& t, const std::string& path, const json& annotations) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error(errc::invalid_input, "cannot open " + path + " for writing");
  out << dump_tour_file({t, annotations});
  if (!out) throw error(errc::invalid_input, "failed writing " + path);
}

tour_file read_tour(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::parse_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tour_file(ss.str());
}

std::vector<std::size_t> violating_edges(const tour& t, bool proper) {
  std::set<std::size_t> edges;
  const std::size_t m = t.order.size();
  for (const auto& v : validate_tour(t, proper).violations) {
    switch (v.kind) {
      case violation_kind::edge_crossing:
      case violation_kind::edge_overlap:
      case violation_kind::vertex_on_edge:
      case violation_kind::foldback:
        edges.insert(v.indices.begin(), v.indices.end());
        break;
      case violation_kind::straight_angle:
        edges.insert((v.indices[0] + m - 1) % m);
        edges.insert(v.indices[0]);
        break;
      default: break;
    }
  }
  return {edges.begin(), edges.end()};
}

std::string to_svg(const tour& t, const svg_options& o) {
  constexpr int cell = 40, margin = 20;
  const int n = std::max(t.n, 1);
  const int size = 2 * margin + (n - 1) * cell;
  auto sx = [&](point p) { return margin + (p.x - 1) * cell; };
  auto sy = [&](point p) { return margin + (n - p.y) * cell; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!t.order.empty()) {
    out << "<path class=\"tour\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-linejoin=\"round\" d=\"";
    for (std::size_t i = 0; i < t.order.size(); ++i)
      out << (i ? " L" : "M") << sx(t.order[i]) << "," << sy(t.order[i]);
    out << " Z\"/>\n";
  }
  if (o.highlight_violations && t.order.size() >= 3) {
    const std::size_t m = t.order.size();
    for (std::size_t e : violating_edges(t, o.proper)) {
      point a = t.order[e], b = t.order[(e + 1) % m];
      out << "<line class=\"violation\" x1=\"" << sx(a) << "\" y1=\"" << sy(a) << "\" x2=\"" << sx(b) << "\" y2=\""
          << sy(b) << "\" stroke=\"red\" stroke-width=\"3\"/>\n";
    }
  }
  if (o.show_grid)
    for (int y = 1; y <= t.n; ++y)
      for (int x = 1; x <= t.n; ++x)
        out << "<circle class=\"dot\" cx=\"" << sx({x, y}) << "\" cy=\"" << sy({x, y})
            << "\" r=\"4\" fill=\"steelblue\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string emit_bfile(sequence_kind kind, int n_max, bfile_mode mode) {
  if (n_max < 2) throw error(errc::out_of_range, "b-file requires n_max >= 2");
  const auto& terms = kind == sequence_kind::a ? reference::a_terms : reference::a0_terms;
  std::ostringstream out;
  bool header = false;
  for (const auto& t : terms) {
    if (t.n > n_max || (kind == sequence_kind::a && t.n >= 9)) break;
    if (!t.proved) {
      if (mode == bfile_mode::proved_only) break;
      if (!header) {
        out << "# terms from n = " << t.n << " on are conjectured (best known constructions)\n";
        header = true;
      }
    }
    out << t.n << " " << t.value << "\n";
  }
  // from n = 9 the a-sequence continues with the fjord formula
  if (kind == sequence_kind::a && mode == bfile_mode::with_conjectured)
    for (int n = 9; n <= n_max; ++n) out << n << " " << alpha(n) << "\n";
  return out.str();
}

json big_json(const big& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

json report_json(const validation_report& r) {
  json vs = json::array();
  for (const auto& v : r.violations) {
    json item{{"kind", violation_name(v.kind)}, {"indices", v.indices}};
    if (v.kind == violation_kind::missing_point || v.kind == violation_kind::duplicate_point)
      item["point"] = {v.where.x, v.where.y};
    vs.push_back(std::move(item));
  }
  return {{"valid", r.valid}, {"violations", std::move(vs)}};
}

json outcome_json(const search_outcome& o) {
  return {{"best_value", o.best_value},
          {"optimal", o.optimal},
          {"witness", o.witness ? tour_file_json({*o.witness, json::object()}) : json(nullptr)},
          {"nodes_expanded", o.nodes_expanded},
          {"elapsed_seconds", o.elapsed_seconds},
          {"infeasible", o.infeasible},
          {"cancelled", o.cancelled}};
}

json improve_json(const tour& initial, const improve_result& r, weight w) {
  json moves = json::array();
  for (const auto& m : r.log) moves.push_back({{"kind", move_name(m.kind)}, {"indices", m.indices}, {"delta", m.delta}});
  return {{"initial_score", score(initial, w)},
          {"score", score(r.result, w)},
          {"tour", tour_file_json({r.result, json::object()})},
          {"moves", std::move(moves)},
          {"cancelled", r.cancelled}};
}

json construction_json(const construction_spec& spec) {
  tour t = construct(spec);
  json ann{{"construction", {{"kind", construction_name(spec.kind)}, {"n", spec.n}}}};
  if (spec.kind == construction_kind::serpentine) ann["construction"]["theta"] = spec.theta.str();
  if (spec.kind == construction_kind::fjord) {
    ann["construction"]["p"] = spec.p;
    ann["construction"]["q"] = spec.q;
  }
  ann["score"] = score(t);
  if (auto expected = closed_form_score(spec)) ann["expected_score"] = big_json(*expected);
  return tour_file_json({std::move(t), std::move(ann)});
}

json formulas_json(int n) {
  if (n < 5) throw error(errc::out_of_range, "formulas require n >= 5");
  big a = alpha(n), b = beta(n);
  json out{{"n", n},
           {"alpha", {{"value", big_json(a)}, {"in_theorem_range", alpha_in_theorem_range(n)}}},
           {"beta", {{"value", big_json(b)}, {"in_range", beta_in_range(n)}}},
           {"serpentine_at_third", big_json(serpentine_sum(n, rational(1, 3)))}};
  json match = json::object();
  auto table = reference::a_value(n);
  match["alpha"] = table ? json(a == *table) : json(nullptr);
  match["beta"] = table && n <= 6 ? json(b == *table) : json(nullptr);
  if (n >= 7) {
    fjord_optimum f = optimal_fjords(n);
    json choices = json::array();
    std::vector<std::pair<int, int>> found;
    for (const auto& c : f.choices) {
      choices.push_back({{"p", c.p}, {"q", c.q}});
      found.push_back({c.p, c.q});
    }
    out["optimal_fjords"] = {{"value", big_json(f.value)}, {"choices", std::move(choices)}};
    auto row = reference::fjords(n);
    match["optimal_fjords"] = row ? json(found == *row) : json(nullptr);
    match["fjord_value"] = table ? json(f.value == *table) : json(nullptr);
  } else {
    out["optimal_fjords"] = nullptr;
    match["optimal_fjords"] = nullptr;
    match["fjord_value"] = nullptr;
  }
  out["table_match"] = std::move(match);
  return out;
}

}  // namespace gridgon
