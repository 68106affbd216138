#pragma once

#include <string>

#include <json.hpp>

#include "gridgon/closed_forms.hpp"
#include "gridgon/constructions.hpp"
#include "gridgon/exact_solver.hpp"
#include "gridgon/geometry.hpp"
#include "gridgon/local_search.hpp"

namespace gridgon {

inline constexpr int tour_format_version = 1;

struct tour_file {
  tour t;
  nlohmann::json annotations = nlohmann::json::object();
};

// {"format_version": 1, "n": n, "order": [[x, y], ...], "annotations": {...}}
std::string dump_tour_file(const tour_file& f);
nlohmann::json tour_file_json(const tour_file& f);

// PARSE_ERROR carries line and column, SCHEMA_ERROR the offending field.
tour_file parse_tour_file(const std::string& text);
tour_file tour_file_from_json(const nlohmann::json& j);

void write_tour(const tour& t, const std::string& path, const nlohmann::json& annotations = nlohmann::json::object());
tour_file read_tour(const std::string& path);

struct svg_options {
  bool show_grid = true;
  bool highlight_violations = false;
  bool proper = false;
};

// Edges touched by a pairwise or angle violation, sorted.
std::vector<std::size_t> violating_edges(const tour& t, bool proper);

std::string to_svg(const tour& t, const svg_options& options = {});

enum class sequence_kind { a, a0 };
enum class bfile_mode { proved_only, with_conjectured };

// "n value" lines; conjectured terms follow a comment line.
std::string emit_bfile(sequence_kind kind, int n_max, bfile_mode mode);

// JSON views shared by the command line and the service.

// A number when it fits in 64 bits, a decimal string otherwise.
nlohmann::json big_json(const big& v);
nlohmann::json report_json(const validation_report& r);
nlohmann::json outcome_json(const search_outcome& o);
nlohmann::json improve_json(const tour& initial, const improve_result& r, weight w);

// TourFile document annotated with the construction, its score and, where a
// closed form exists, expected_score.
nlohmann::json construction_json(const construction_spec& spec);

// Closed forms at n >= 5 with the best fjord choices and comparisons against
// the reference tables.
nlohmann::json formulas_json(int n);

}  // namespace gridgon
