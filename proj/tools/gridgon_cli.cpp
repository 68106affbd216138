#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gridgon/artifact_io.hpp"
#include "gridgon/error.hpp"
#include "gridgon/service.hpp"

using namespace gridgon;
using nlohmann::json;

namespace {

enum exit_code { ok = 0, failure = 1, invalid = 2, bad_file = 3, budget_exhausted = 4 };

struct common {
  std::string weight_text = "euclid";
  bool proper = false;
  weight w() const { return *parse_weight(weight_text); }
};

void add_common(CLI::App* cmd, common& c) {
  cmd->add_option("--weight", c.weight_text, "Edge weight")
      ->check(CLI::IsMember({"euclid", "manhattan"}))
      ->capture_default_str();
  cmd->add_flag("--proper", c.proper, "Forbid straight angles");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw error(errc::invalid_input, "cannot open " + out_path + " for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximal-length simple polygons through all points of an n x n grid"};
  app.require_subcommand(1);
  common c;
  std::string out_path;
  int result = ok;

  // construct
  auto* construct_cmd = app.add_subcommand("construct", "Build a construction and print its tour file");
  std::string kind_text = "first", theta_text = "1/3";
  construction_spec spec;
  construct_cmd->add_option("--kind", kind_text, "serpentine, first, fjord or proper")->capture_default_str();
  construct_cmd->add_option("-n,--n", spec.n, "Grid size")->required();
  construct_cmd->add_option("--theta", theta_text, "Serpentine split, e.g. 1/3")->capture_default_str();
  construct_cmd->add_option("--p", spec.p, "Bottom fjords")->capture_default_str();
  construct_cmd->add_option("--q", spec.q, "Side fjords")->capture_default_str();
  construct_cmd->add_option("-o,--output", out_path, "Write to file instead of stdout");
  add_common(construct_cmd, c);
  construct_cmd->callback([&] {
    auto kind = parse_construction_kind(kind_text);
    if (!kind) throw CLI::ValidationError("--kind", "expected serpentine, first, fjord or proper");
    spec.kind = *kind;
    spec.theta = parse_rational(theta_text);
    json doc = construction_json(spec);
    emit(doc.dump(2) + "\n", out_path);
    if (!validate_tour(tour_file_from_json(doc).t, c.proper).valid) result = invalid;
  });

  // score
  auto* score_cmd = app.add_subcommand("score", "Score a tour file");
  std::string in_path;
  score_cmd->add_option("file", in_path, "Tour file")->required();
  add_common(score_cmd, c);
  score_cmd->callback([&] {
    tour_file f = read_tour(in_path);
    json out = report_json(validate_tour(f.t, c.proper));
    out["score"] = score(f.t, c.w());
    out["weight"] = weight_name(c.w());
    std::cout << out.dump(2) << "\n";
  });

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Validate a tour file");
  validate_cmd->add_option("file", in_path, "Tour file")->required();
  add_common(validate_cmd, c);
  validate_cmd->callback([&] {
    tour_file f = read_tour(in_path);
    validation_report r = validate_tour(f.t, c.proper);
    std::cout << report_json(r).dump(2) << "\n";
    if (!r.valid) result = invalid;
  });

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Exact branch and bound");
  int solve_n = 0;
  std::uint64_t max_nodes = 0;
  double max_seconds = 0;
  bool no_seed = false;
  solve_cmd->add_option("-n,--n", solve_n, "Grid size")->required();
  solve_cmd->add_option("--max-nodes", max_nodes, "Node budget, 0 for none")->capture_default_str();
  solve_cmd->add_option("--max-seconds", max_seconds, "Time budget, 0 for none")->capture_default_str();
  solve_cmd->add_flag("--no-seed", no_seed, "Do not start from the best construction");
  solve_cmd->add_option("-o,--output", out_path, "Write the witness tour file");
  add_common(solve_cmd, c);
  solve_cmd->callback([&] {
    search_budget b{max_nodes, max_seconds, nullptr};
    solve_options opts;
    opts.seed_from_constructions = !no_seed;
    search_outcome o = solve_exact(solve_n, c.proper, c.w(), b, opts);
    std::cout << outcome_json(o).dump(2) << "\n";
    if (!out_path.empty() && o.witness) write_tour(*o.witness, out_path, {{"score", o.best_value}});
    if (!o.optimal) result = budget_exhausted;
  });

  // improve
  auto* improve_cmd = app.add_subcommand("improve", "Local search from a tour file");
  std::uint64_t iterations = 0, seed = 0;
  improve_cmd->add_option("file", in_path, "Tour file")->required();
  improve_cmd->add_option("--iterations", iterations, "Accepted-move budget, 0 for none")->capture_default_str();
  improve_cmd->add_option("--seed", seed, "Scan order seed")->capture_default_str();
  improve_cmd->add_option("-o,--output", out_path, "Write the improved tour file");
  add_common(improve_cmd, c);
  improve_cmd->callback([&] {
    tour_file f = read_tour(in_path);
    if (!validate_tour(f.t, c.proper).valid) {
      std::cerr << "INVALID_INPUT: input tour fails validation\n";
      result = invalid;
      return;
    }
    improve_result r = improve(f.t, c.proper, c.w(), iterations, seed);
    std::cout << improve_json(f.t, r, c.w()).dump(2) << "\n";
    if (!out_path.empty()) write_tour(r.result, out_path, {{"score", score(r.result, c.w())}});
  });

  // formulas
  auto* formulas_cmd = app.add_subcommand("formulas", "Closed forms and table comparison for n");
  int formulas_n = 0;
  formulas_cmd->add_option("n", formulas_n, "Grid size")->required();
  add_common(formulas_cmd, c);
  formulas_cmd->callback([&] { std::cout << formulas_json(formulas_n).dump(2) << "\n"; });

  // bfile
  auto* bfile_cmd = app.add_subcommand("bfile", "Print sequence terms as 'n value' lines");
  std::string seq = "a";
  int n_max = 20;
  bool conjectured = false;
  bfile_cmd->add_option("--sequence", seq, "a or a0")->check(CLI::IsMember({"a", "a0"}))->capture_default_str();
  bfile_cmd->add_option("--n-max", n_max, "Last index")->capture_default_str();
  bfile_cmd->add_flag("--conjectured", conjectured, "Continue past the proved terms");
  bfile_cmd->add_option("-o,--output", out_path, "Write to file instead of stdout");
  add_common(bfile_cmd, c);
  bfile_cmd->callback([&] {
    emit(emit_bfile(seq == "a0" || c.proper ? sequence_kind::a0 : sequence_kind::a, n_max,
                    conjectured ? bfile_mode::with_conjectured : bfile_mode::proved_only),
         out_path);
  });

  // svg
  auto* svg_cmd = app.add_subcommand("svg", "Render a tour file as SVG");
  bool no_grid = false, highlight = false;
  svg_cmd->add_option("file", in_path, "Tour file")->required();
  svg_cmd->add_flag("--no-grid", no_grid, "Omit the grid dots");
  svg_cmd->add_flag("--highlight", highlight, "Stroke violating edges in red");
  svg_cmd->add_option("-o,--output", out_path, "Write to file instead of stdout");
  add_common(svg_cmd, c);
  svg_cmd->callback([&] {
    tour_file f = read_tour(in_path);
    emit(to_svg(f.t, {!no_grid, highlight, c.proper}), out_path);
  });

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  service_config cfg;
  serve_cmd->add_option("--host", cfg.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", cfg.port, "Port")->capture_default_str();
  serve_cmd->add_option("--solve-cap", cfg.solve_cap, "Largest n accepted by solve jobs")->capture_default_str();
  serve_cmd->add_option("--workers", cfg.workers, "Job worker threads")->capture_default_str();
  add_common(serve_cmd, c);
  serve_cmd->callback([&] {
    service s(cfg);
    std::cerr << "listening on http://" << cfg.host << ":" << cfg.port << "\n";
    if (!s.listen()) {
      std::cerr << "cannot bind " << cfg.host << ":" << cfg.port << "\n";
      result = failure;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::parse_error || e.code() == errc::schema_error ? bad_file : failure;
  }
  return result;
}
