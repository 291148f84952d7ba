#include "tropahp/service.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <random>

#include <httplib.h>

namespace tropahp::service {

namespace fs = std::filesystem;
using io::Json;

namespace {

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string random_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char digits[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 16; ++i) id += digits[rng() % 16];
  return id;
}

Json session_json(const Session& s) {
  return {{"id", s.id}, {"version", s.version}, {"updated_at", s.updated_at}, {"problem", s.problem}};
}

}  // namespace

bool valid_session_id(const std::string& id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

// ---------------------------------------------------------------------------
// Reciprocal completion

Json reciprocal_entry(const Json& entry) {
  if (entry.is_number_integer() || entry.is_number_unsigned()) {
    const auto n = entry.get<long long>();
    if (n == 1) return 1;
    return "1/" + std::to_string(n);
  }
  if (entry.is_string()) {
    const std::string text = entry.get<std::string>();
    const auto slash = text.find('/');
    if (slash == std::string::npos) return "1/" + text;
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num == "1") return den;
    return den + "/" + num;
  }
  return 1.0 / io::parse_entry(entry, "entry");
}

namespace {

void complete_matrix(const Json& before, Json& after) {
  if (!before.is_array() || !after.is_array() || before.size() != after.size()) return;
  const std::size_t n = after.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!before[i].is_array() || !after[i].is_array() || before[i].size() != n ||
        after[i].size() != n) {
      return;
    }
  }
  auto changed = [&](std::size_t i, std::size_t j) {
    try {
      return io::parse_entry(before[i][j], "") != io::parse_entry(after[i][j], "");
    } catch (const Error&) {
      return before[i][j] != after[i][j];
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool upper = changed(i, j);
      const bool lower = changed(j, i);
      try {
        if (upper && !lower) after[j][i] = reciprocal_entry(after[i][j]);
        if (lower && !upper) after[i][j] = reciprocal_entry(after[j][i]);
      } catch (const Error&) {
        // left for validation to report
      }
    }
  }
}

}  // namespace

Json complete_reciprocals(const Json& before, Json after) {
  if (!before.is_object() || !after.is_object()) return after;
  if (before.contains("criteria_matrix") && after.contains("criteria_matrix")) {
    complete_matrix(before["criteria_matrix"], after["criteria_matrix"]);
  }
  if (before.contains("alternative_matrices") && after.contains("alternative_matrices")) {
    const Json& b = before["alternative_matrices"];
    Json& a = after["alternative_matrices"];
    if (b.is_array() && a.is_array()) {
      for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) complete_matrix(b[k], a[k]);
    }
  }
  return after;
}

// ---------------------------------------------------------------------------
// Store

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

std::shared_mutex& SessionStore::lock_for(const std::string& id) const {
  std::lock_guard guard(table_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::shared_mutex>();
  return *slot;
}

fs::path SessionStore::file_for(const std::string& id) const { return root_ / (id + ".json"); }

void SessionStore::write(const Session& s) const {
  const fs::path target = file_for(s.id);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << session_json(s).dump(2) << "\n";
  }
  fs::rename(tmp, target);
}

std::optional<Session> SessionStore::read(const std::string& id) const {
  if (!valid_session_id(id)) return std::nullopt;
  const fs::path path = file_for(id);
  if (!fs::exists(path)) return std::nullopt;
  const Json j = Json::parse(io::read_file(path));
  Session s;
  s.id = j.at("id").get<std::string>();
  s.version = j.at("version").get<std::int64_t>();
  s.updated_at = j.at("updated_at").get<std::string>();
  s.problem = j.at("problem");
  return s;
}

Session SessionStore::create(const Json& problem, const Tolerance& tol) {
  io::document_from_json(problem, tol);
  Session s;
  {
    std::lock_guard guard(table_mutex_);
    do {
      s.id = random_id();
    } while (fs::exists(file_for(s.id)) || locks_.count(s.id) > 0);
    locks_[s.id] = std::make_unique<std::shared_mutex>();
  }
  std::unique_lock lock(lock_for(s.id));
  s.version = 1;
  s.updated_at = now_utc();
  s.problem = problem;
  write(s);
  return s;
}

Session SessionStore::get(const std::string& id) const {
  if (!valid_session_id(id)) throw NotFound(id);
  std::shared_lock lock(lock_for(id));
  auto s = read(id);
  if (!s) throw NotFound(id);
  return *s;
}

Session SessionStore::replace(const std::string& id, std::int64_t expected_version,
                              Json problem, const Tolerance& tol) {
  if (!valid_session_id(id)) throw NotFound(id);
  std::unique_lock lock(lock_for(id));
  auto current = read(id);
  if (!current) throw NotFound(id);
  if (current->version != expected_version) {
    throw Conflict("version " + std::to_string(expected_version) + " is stale; current is " +
                   std::to_string(current->version));
  }
  Json completed = complete_reciprocals(current->problem, std::move(problem));
  io::document_from_json(completed, tol);
  current->problem = std::move(completed);
  current->version += 1;
  current->updated_at = now_utc();
  write(*current);
  return *current;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

Json body_json(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw ParseError("request body must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("request body is not valid JSON");
  }
}

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(io::dump_report(body), "application/json");
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const NotFound& e) {
      reply(res, 404, {{"error", e.what()}});
    } catch (const Conflict& e) {
      reply(res, 409, {{"error", e.what()}});
    } catch (const Error& e) {
      reply(res, 400, {{"error", e.what()}, {"kind", to_string(e.code())}});
    } catch (const nlohmann::json::exception& e) {
      reply(res, 400, {{"error", e.what()}, {"kind", "parse error"}});
    } catch (const std::exception& e) {
      reply(res, 500, {{"error", e.what()}});
    }
  };
}

Tolerance tolerance_from(const Json& body) {
  Tolerance tol;
  if (body.contains("rel_eq")) tol.rel_eq = body["rel_eq"].get<double>();
  if (body.contains("tie_tol")) tol.tie_tol = body["tie_tol"].get<double>();
  tol.check();
  return tol;
}

SolveOptions options_from(const Json& body) {
  SolveOptions options;
  if (body.contains("mode")) options.mode = parse_solve_mode(body["mode"].get<std::string>());
  if (body.contains("baseline")) options.baseline = body["baseline"].get<bool>();
  return options;
}

// Index of the matrix addressed by an override: "criteria", a 1-based
// criterion number or a criterion label. -1 stands for the criteria matrix.
long matrix_selector(const Json& sel, const DecisionProblem& p) {
  if (sel.is_string()) {
    const auto name = sel.get<std::string>();
    if (name == "criteria") return -1;
    for (std::size_t k = 0; k < p.criteria_labels.size(); ++k)
      if (p.criteria_labels[k] == name) return long(k);
    throw ValidationError("override: unknown matrix '" + name + "'");
  }
  if (sel.is_number_integer()) {
    const long k = sel.get<long>();
    if (k < 1 || k > long(p.alternatives.size())) {
      throw ValidationError("override: matrix index " + std::to_string(k) + " out of range");
    }
    return k - 1;
  }
  throw ValidationError("override: 'matrix' must be \"criteria\", a label or an index");
}

void apply_override(DecisionProblem& p, const Json& o, std::size_t n) {
  const std::string path = "overrides[" + std::to_string(n) + "]";
  if (!o.is_object() || !o.contains("matrix") || !o.contains("i") || !o.contains("j") ||
      !o.contains("value")) {
    throw ValidationError(path + ": expected {matrix, i, j, value}");
  }
  const long k = matrix_selector(o["matrix"], p);
  MatrixXt& m = k < 0 ? p.criteria : p.alternatives[std::size_t(k)];
  const long i = o["i"].get<long>() - 1;
  const long j = o["j"].get<long>() - 1;
  if (i < 0 || j < 0 || i >= m.rows() || j >= m.cols() || i == j) {
    throw ValidationError(path + ": cell out of range or on the diagonal");
  }
  const double v = io::parse_entry(o["value"], path + ".value");
  m(i, j) = v;
  m(j, i) = 1.0 / v;
}

}  // namespace

Server::Server(fs::path data_dir)
    : store_(std::move(data_dir)), http_(std::make_unique<httplib::Server>()) {
  routes();
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  if (!http_->bind_to_port(host, port)) {
    throw Error(ErrorCode::InvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Server::listen() { http_->listen_after_bind(); }

void Server::stop() {
  if (http_) http_->stop();
}

void Server::routes() {
  auto& s = *http_;
  const std::string id_path = R"(/api/problems/([A-Za-z0-9_-]+))";

  s.Get("/api/health", guarded([](const httplib::Request&, httplib::Response& res) {
          reply(res, 200, {{"status", "ok"}, {"schema_version", io::kSchemaVersion}});
        }));

  s.Post("/api/problems", guarded([this](const httplib::Request& req, httplib::Response& res) {
           Json body = body_json(req);
           // Accept either the bare document or {"problem": document}.
           const Json problem = body.contains("problem") ? body["problem"] : body;
           const Session session = store_.create(problem, tolerance_from(body));
           reply(res, 201, session_json(session));
         }));

  s.Get(id_path, guarded([this](const httplib::Request& req, httplib::Response& res) {
          reply(res, 200, session_json(store_.get(req.matches[1])));
        }));

  s.Put(id_path, guarded([this](const httplib::Request& req, httplib::Response& res) {
          Json body = body_json(req);
          if (!body.contains("version") || !body.contains("problem")) {
            throw ValidationError("PUT body must contain 'version' and 'problem'");
          }
          const Session session = store_.replace(req.matches[1], body["version"].get<std::int64_t>(),
                                                 body["problem"], tolerance_from(body));
          reply(res, 200, session_json(session));
        }));

  s.Post(id_path + "/solve", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const Json body = body_json(req);
           const Tolerance tol = tolerance_from(body);
           const auto doc = io::document_from_json(store_.get(req.matches[1]).problem, tol);
           const SolveReport report = solve(doc.problem, tol, options_from(body));
           reply(res, 200, io::report_to_json(report, doc.problem, tol));
         }));

  s.Post(id_path + "/whatif", guarded([this](const httplib::Request& req, httplib::Response& res) {
           const Json body = body_json(req);
           const Tolerance tol = tolerance_from(body);
           auto doc = io::document_from_json(store_.get(req.matches[1]).problem, tol);
           DecisionProblem problem = doc.problem;
           if (body.contains("overrides")) {
             const Json& overrides = body["overrides"];
             if (!overrides.is_array()) throw ValidationError("overrides must be an array");
             for (std::size_t n = 0; n < overrides.size(); ++n) {
               apply_override(problem, overrides[n], n);
             }
           }
           const SolveOptions options = options_from(body);
           SolveReport report;
           if (body.contains("weights")) {
             const auto w = body["weights"].get<std::vector<double>>();
             report = solve_fixed_weights(
                 problem, Eigen::Map<const VectorXt>(w.data(), Index(w.size())), tol, options);
           } else {
             report = solve(problem, tol, options);
           }
           reply(res, 200, io::report_to_json(report, problem, tol));
         }));

  s.Get(id_path + "/geometry", guarded([this](const httplib::Request& req, httplib::Response& res) {
          const auto doc = io::document_from_json(store_.get(req.matches[1]).problem);
          if (doc.problem.alternative_count() != 3) {
            throw ValidationError("geometry needs exactly 3 alternatives, problem has " +
                                  std::to_string(doc.problem.alternative_count()));
          }
          const SolveReport report = solve(doc.problem);
          reply(res, 200, {{"geometry", io::plot_to_json(report_geometry(report))}});
        }));
}

}  // namespace tropahp::service
