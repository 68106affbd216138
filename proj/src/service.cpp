#include "gridgon/service.hpp"

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "gridgon/artifact_io.hpp"
#include "gridgon/error.hpp"

namespace gridgon {

using nlohmann::json;

namespace {

enum class job_state { queued, running, done, cancelled };

const char* state_name(job_state s) {
  switch (s) {
    case job_state::queued: return "QUEUED";
    case job_state::running: return "RUNNING";
    case job_state::done: return "DONE";
    case job_state::cancelled: return "CANCELLED";
  }
  return "UNKNOWN";
}

struct job {
  std::string id;
  bool solve = true;
  job_state state = job_state::queued;
  std::atomic<bool> cancel{false};
  // solve
  int n = 0;
  bool proper = false;
  weight w = weight::euclid_sq;
  search_budget budget;
  solve_options options;
  // improve
  tour input;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  json outcome;
  json partial;
};

struct bad_request : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool query_bool(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) return false;
  std::string v = req.get_param_value(key);
  if (v == "true" || v == "1" || v.empty()) return true;
  if (v == "false" || v == "0") return false;
  throw bad_request(std::string(key) + ": expected true or false");
}

weight query_weight(const httplib::Request& req) {
  if (!req.has_param("weight")) return weight::euclid_sq;
  auto w = parse_weight(req.get_param_value("weight"));
  if (!w) throw bad_request("weight: expected euclid or manhattan");
  return *w;
}

int query_int(const httplib::Request& req, const char* key, int fallback) {
  if (!req.has_param(key)) return fallback;
  std::string v = req.get_param_value(key);
  try {
    std::size_t used = 0;
    int x = std::stoi(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw bad_request(std::string(key) + ": expected an integer");
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"error", code}, {"message", message}});
}

int status_for(errc c) {
  switch (c) {
    case errc::parse_error:
    case errc::schema_error: return 400;
    default: return 422;
  }
}

// Runs the handler and maps library errors onto status codes.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const bad_request& e) {
    send_error(res, 400, "BAD_REQUEST", e.what());
  } catch (const error& e) {
    send_error(res, status_for(e.code()), errc_name(e.code()), e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "INTERNAL", e.what());
  }
}

json openapi_document() {
  auto op = [](const char* summary, json params = json::array()) {
    return json{{"summary", summary}, {"parameters", std::move(params)}, {"responses", {{"200", {{"description", "ok"}}}}}};
  };
  auto q = [](const char* name, const char* type, bool required = false) {
    return json{{"name", name}, {"in", "query"}, {"required", required}, {"schema", {{"type", type}}}};
  };
  json tour_file_schema{
      {"type", "object"},
      {"required", {"format_version", "n", "order"}},
      {"properties",
       {{"format_version", {{"type", "integer"}, {"enum", {tour_format_version}}}},
        {"n", {{"type", "integer"}, {"minimum", 1}}},
        {"order", {{"type", "array"}, {"items", {{"type", "array"}, {"items", {{"type", "integer"}}}, {"minItems", 2}, {"maxItems", 2}}}}},
        {"annotations", {{"type", "object"}}}}}};
  json body{{"required", true}, {"content", {{"application/json", {{"schema", {{"$ref", "#/components/schemas/TourFile"}}}}}}}};
  json validate = op("Validate a tour", json::array({q("proper", "boolean")}));
  validate["requestBody"] = body;
  validate["responses"]["400"] = {{"description", "parse or schema error"}};
  json score_op = op("Score and validate a tour", json::array({q("weight", "string"), q("proper", "boolean")}));
  score_op["requestBody"] = body;
  score_op["responses"]["400"] = {{"description", "parse or schema error"}};
  json construct = op("Build a construction",
                      json::array({q("kind", "string", true), q("n", "integer", true), q("theta", "string"),
                                   q("p", "integer"), q("q", "integer")}));
  construct["responses"]["422"] = {{"description", "parameters out of range"}};
  json formulas = op("Closed forms for n",
                     json::array({json{{"name", "n"}, {"in", "path"}, {"required", true}, {"schema", {{"type", "integer"}}}}}));
  formulas["responses"]["422"] = {{"description", "n below 5"}};
  json submit = op("Submit a solve or improve job");
  submit["requestBody"] = {{"required", true}, {"content", {{"application/json", {{"schema", {{"type", "object"}}}}}}}};
  submit["responses"] = {{"202", {{"description", "queued"}}}, {"422", {{"description", "over the solve cap or invalid tour"}}}};
  json id_param = json::array({json{{"name", "id"}, {"in", "path"}, {"required", true}, {"schema", {{"type", "string"}}}}});
  json get_job = op("Job status", id_param);
  get_job["responses"]["404"] = {{"description", "unknown id"}};
  json cancel_job = op("Cancel a job", id_param);
  cancel_job["responses"]["404"] = {{"description", "unknown id"}};
  cancel_job["responses"]["409"] = {{"description", "job already finished"}};
  return {{"openapi", "3.0.3"},
          {"info", {{"title", "gridgon service"}, {"version", "1.0.0"}}},
          {"paths",
           {{"/api/v1/validate", {{"post", validate}}},
            {"/api/v1/score", {{"post", score_op}}},
            {"/api/v1/construct", {{"get", construct}}},
            {"/api/v1/formulas/{n}", {{"get", formulas}}},
            {"/api/v1/jobs", {{"post", submit}}},
            {"/api/v1/jobs/{id}", {{"get", get_job}, {"delete", cancel_job}}},
            {"/api/v1/spec", {{"get", op("This document")}}}}},
          {"components", {{"schemas", {{"TourFile", tour_file_schema}}}}}};
}

}  // namespace

struct service::impl {
  service_config config;
  httplib::Server server;
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::shared_ptr<job>> queue;
  std::map<std::string, std::shared_ptr<job>> jobs;
  std::vector<std::thread> workers;
  bool stopping = false;
  std::mt19937_64 ids{std::random_device{}()};

  explicit impl(service_config c) : config(std::move(c)) {
    routes();
    for (int i = 0; i < std::max(1, config.workers); ++i) workers.emplace_back([this] { work(); });
  }

  ~impl() {
    {
      std::lock_guard lock(mu);
      stopping = true;
      for (auto& [id, j] : jobs) j->cancel = true;
    }
    cv.notify_all();
    server.stop();
    for (auto& t : workers) t.join();
  }

  json job_json(const job& j) {
    json out{{"id", j.id}, {"kind", j.solve ? "SOLVE" : "IMPROVE"}, {"state", state_name(j.state)}};
    if (j.state == job_state::done) out["outcome"] = j.outcome;
    if (j.state == job_state::cancelled) out["partial"] = j.partial;
    return out;
  }

  void work() {
    for (;;) {
      std::shared_ptr<job> j;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [this] { return stopping || !queue.empty(); });
        if (stopping) return;
        j = queue.front();
        queue.pop_front();
        if (j->state != job_state::queued) continue;
        j->state = job_state::running;
      }
      json result;
      bool cancelled = false;
      try {
        if (j->solve) {
          search_budget b = j->budget;
          b.cancel = &j->cancel;
          search_outcome o = solve_exact(j->n, j->proper, j->w, b, j->options);
          cancelled = o.cancelled;
          result = outcome_json(o);
        } else {
          improve_result r = improve(j->input, j->proper, j->w, j->iterations, j->seed, &j->cancel);
          cancelled = r.cancelled;
          result = improve_json(j->input, r, j->w);
        }
      } catch (const error& e) {
        result = {{"error", errc_name(e.code())}, {"message", e.what()}};
      }
      std::lock_guard lock(mu);
      if (cancelled) {
        j->partial = std::move(result);
        j->state = job_state::cancelled;
      } else {
        j->outcome = std::move(result);
        j->state = job_state::done;
      }
    }
  }

  std::shared_ptr<job> parse_job(const json& body) {
    if (!body.is_object()) throw bad_request("body: expected an object");
    auto j = std::make_shared<job>();
    std::string kind = body.value("kind", "");
    if (kind == "solve" || kind == "SOLVE") j->solve = true;
    else if (kind == "improve" || kind == "IMPROVE") j->solve = false;
    else throw bad_request("kind: expected solve or improve");
    j->proper = body.value("proper", false);
    auto w = parse_weight(body.value("weight", std::string("euclid")));
    if (!w) throw bad_request("weight: expected euclid or manhattan");
    j->w = *w;
    if (j->solve) {
      if (!body.contains("n") || !body["n"].is_number_integer()) throw bad_request("n: expected an integer");
      j->n = body["n"].get<int>();
      if (j->n < 2) throw error(errc::out_of_range, "n must be at least 2");
      if (j->n > config.solve_cap)
        throw error(errc::out_of_range, "n = " + std::to_string(j->n) + " exceeds the solve cap " +
                                            std::to_string(config.solve_cap));
      if (body.contains("budget")) {
        const json& b = body["budget"];
        j->budget.max_nodes = b.value("max_nodes", std::uint64_t(0));
        j->budget.max_seconds = b.value("max_seconds", 0.0);
      }
      j->options.seed_from_constructions = body.value("seed_from_constructions", true);
    } else {
      if (!body.contains("tour")) throw bad_request("tour: missing");
      j->input = tour_file_from_json(body["tour"]).t;
      if (!validate_tour(j->input, j->proper).valid) throw error(errc::invalid_input, "tour fails validation");
      j->iterations = body.value("iterations", std::uint64_t(0));
      j->seed = body.value("seed", std::uint64_t(0));
    }
    return j;
  }

  std::string new_id() {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ids()));
    return buf;
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"}});
    server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/api/v1/validate", [](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        bool proper = query_bool(req, "proper");
        tour_file f = parse_tour_file(req.body);
        send_json(res, 200, report_json(validate_tour(f.t, proper)));
      });
    });

    server.Post("/api/v1/score", [](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        weight w = query_weight(req);
        bool proper = query_bool(req, "proper");
        tour_file f = parse_tour_file(req.body);
        json out = report_json(validate_tour(f.t, proper));
        out["score"] = score(f.t, w);
        out["weight"] = weight_name(w);
        send_json(res, 200, out);
      });
    });

    server.Get("/api/v1/construct", [](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        construction_spec spec;
        auto kind = parse_construction_kind(req.get_param_value("kind"));
        if (!kind) throw bad_request("kind: expected serpentine, first, fjord or proper");
        spec.kind = *kind;
        spec.n = query_int(req, "n", 0);
        if (req.has_param("theta")) {
          try {
            spec.theta = parse_rational(req.get_param_value("theta"));
          } catch (const error& e) {
            throw bad_request(std::string("theta: ") + e.what());
          }
        }
        spec.p = query_int(req, "p", 1);
        spec.q = query_int(req, "q", 1);
        send_json(res, 200, construction_json(spec));
      });
    });

    server.Get(R"(/api/v1/formulas/(-?\d+))", [](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        int n = 0;
        try {
          n = std::stoi(req.matches[1]);
        } catch (const std::exception&) {
          throw error(errc::out_of_range, "n is too large");
        }
        send_json(res, 200, formulas_json(n));
      });
    });

    server.Post("/api/v1/jobs", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        json body;
        try {
          body = json::parse(req.body);
        } catch (const json::parse_error& e) {
          throw error(errc::parse_error, e.what());
        }
        auto j = parse_job(body);
        json out;
        {
          std::lock_guard lock(mu);
          j->id = new_id();
          while (jobs.count(j->id)) j->id = new_id();
          jobs[j->id] = j;
          queue.push_back(j);
          out = job_json(*j);
        }
        cv.notify_one();
        send_json(res, 202, out);
      });
    });

    server.Get(R"(/api/v1/jobs/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu);
      auto it = jobs.find(req.matches[1]);
      if (it == jobs.end()) return send_error(res, 404, "NOT_FOUND", "unknown job id");
      send_json(res, 200, job_json(*it->second));
    });

    server.Delete(R"(/api/v1/jobs/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu);
      auto it = jobs.find(req.matches[1]);
      if (it == jobs.end()) return send_error(res, 404, "NOT_FOUND", "unknown job id");
      job& j = *it->second;
      switch (j.state) {
        case job_state::done: return send_error(res, 409, "CONFLICT", "job already finished");
        case job_state::queued:
          j.state = job_state::cancelled;
          j.partial = nullptr;
          break;
        case job_state::running: j.cancel = true; break;
        case job_state::cancelled: break;
      }
      send_json(res, 202, job_json(j));
    });

    server.Get("/api/v1/spec", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, openapi_document());
    });
  }
};

service::service(service_config config) : p_(std::make_unique<impl>(std::move(config))) {}

service::~service() = default;

bool service::listen() { return p_->server.listen(p_->config.host, p_->config.port); }

int service::bind_any_port() { return p_->server.bind_to_any_port(p_->config.host); }

bool service::listen_bound() { return p_->server.listen_after_bind(); }

void service::stop() { p_->server.stop(); }

bool service::running() const { return p_->server.is_running(); }

}  // namespace gridgon
