#include "tropahp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tropahp::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_decimal(const std::string& text, long double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::vector<std::string> parse_labels(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ParseError(index_path(path, i) + ": expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return doc.at(name);
}

}  // namespace

double parse_entry(const Json& value, const std::string& path) {
  long double v = 0;
  if (value.is_number()) {
    v = value.get<long double>();
  } else if (value.is_string()) {
    const std::string text = value.get<std::string>();
    const auto slash = text.find('/');
    long double num = 0, den = 1;
    bool ok = slash == std::string::npos
                  ? parse_decimal(trim(text), num)
                  : parse_decimal(trim(std::string_view(text).substr(0, slash)), num) &&
                        parse_decimal(trim(std::string_view(text).substr(slash + 1)), den);
    if (!ok || den == 0) {
      throw ParseError(path + ": cannot parse '" + text + "' as a number or p/q");
    }
    v = num / den;
  } else {
    throw ParseError(path + ": expected a number or a string \"p/q\"");
  }
  if (!(v > 0) || !std::isfinite(double(v))) {
    throw ValidationError(path + ": entry must be positive and finite");
  }
  return double(v);
}

MatrixXt parse_matrix(const Json& rows, const std::string& path) {
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(path + ": expected a nonempty array of rows");
  }
  const std::size_t n = rows.size();
  MatrixXt m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_path = index_path(path, i);
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw ParseError(row_path + ": expected a row of " + std::to_string(n) + " entries");
    }
    for (std::size_t j = 0; j < n; ++j) {
      m(Index(i), Index(j)) = parse_entry(rows[i][j], index_path(row_path, j));
    }
  }
  return m;
}

ProblemDocument document_from_json(const Json& json, const Tolerance& tol) {
  if (!json.is_object()) throw ParseError("problem document must be a JSON object");
  const Json& version = field(json, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    throw ParseError(std::string("schema_version: expected \"") + kSchemaVersion + "\"");
  }
  ProblemDocument doc;
  doc.json = json;
  auto& p = doc.problem;
  if (json.contains("name")) {
    if (!json["name"].is_string()) throw ParseError("name: expected a string");
    p.name = json["name"].get<std::string>();
  }
  p.criteria_labels = parse_labels(field(json, "criteria"), "criteria");
  p.alternative_labels = parse_labels(field(json, "alternatives"), "alternatives");
  p.criteria = parse_matrix(field(json, "criteria_matrix"), "criteria_matrix");
  const Json& alts = field(json, "alternative_matrices");
  if (!alts.is_array()) throw ParseError("alternative_matrices: expected an array");
  for (std::size_t k = 0; k < alts.size(); ++k) {
    p.alternatives.push_back(parse_matrix(alts[k], index_path("alternative_matrices", k)));
  }
  validate_problem(p, tol);
  return doc;
}

ProblemDocument parse_document(std::string_view text, const Tolerance& tol) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    const std::size_t offset = e.byte > 0 ? std::min<std::size_t>(e.byte - 1, text.size()) : 0;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": invalid JSON");
  }
  return document_from_json(json, tol);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemDocument load_problem(const std::filesystem::path& path, const Tolerance& tol) {
  const std::string text = read_file(path);
  try {
    return parse_document(text, tol);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

MatrixXt matrix_from_json(const Json& json) {
  if (json.is_object()) return parse_matrix(field(json, "matrix"), "matrix");
  return parse_matrix(json, "matrix");
}

MatrixXt load_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": invalid JSON at byte " + std::to_string(e.byte));
  }
  return matrix_from_json(json);
}

std::string dump_document(const ProblemDocument& doc) { return doc.json.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Reports

double round12(double x) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

Json vector_json(const VectorXt& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(round12(v(i)));
  return out;
}

Json rows_json(const MatrixXt& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

Json columns_json(const MatrixXt& m) {
  Json out = Json::array();
  for (Index j = 0; j < m.cols(); ++j) out.push_back(vector_json(m.col(j)));
  return out;
}

Json pairs_json(const std::vector<IndexPair>& pairs) {
  Json out = Json::array();
  for (const auto& p : pairs) out.push_back({p.k + 1, p.l + 1});
  return out;
}

std::string label(const DecisionProblem& p, Index i) {
  if (i < Index(p.alternative_labels.size())) return p.alternative_labels[std::size_t(i)];
  return "#" + std::to_string(i + 1);
}

Json ranking_json(const Ranking& r, const DecisionProblem& p) {
  Json groups = Json::array();
  for (const auto& g : r.groups) {
    Json names = Json::array();
    for (Index i : g) names.push_back(label(p, i));
    groups.push_back(names);
  }
  return {{"vector", vector_json(r.vector)},
          {"groups", groups},
          {"text", render_ranking(r, p.alternative_labels)}};
}

Json order_json(const CombinedOrder& o, const DecisionProblem& p) {
  Json relations = Json::array();
  for (const auto& pr : o.relations) {
    relations.push_back(
        {{"a", label(p, pr.a)}, {"b", label(p, pr.b)}, {"relation", to_string(pr.relation)}});
  }
  return {{"total", o.total}, {"text", o.text}, {"relations", relations}};
}

Json branch_json(const Branch& b, const DecisionProblem& p) {
  Json solutions = Json::array();
  for (Index j = 0; j < b.solution_generators.cols(); ++j) {
    solutions.push_back(ranking_json(b.rankings[std::size_t(j)], p));
  }
  Json out = {{"weights", vector_json(b.weights)},
              {"combined_matrix", rows_json(b.combined)},
              {"mu", round12(b.mu)},
              {"priority_generators", columns_json(b.priority_generators)},
              {"delta", round12(b.delta)},
              {"solutions", solutions},
              {"order", order_json(b.order, p)}};
  if (!b.witness_pairs.empty()) {
    out["witness_pairs"] = pairs_json(b.witness_pairs);
    Json pieces = Json::array();
    for (const auto& piece : b.pieces) pieces.push_back(columns_json(piece));
    out["pieces"] = pieces;
  }
  return out;
}

Json point_json(const Point2& p) { return Json::array({round12(p.x), round12(p.y)}); }

}  // namespace

Json plot_to_json(const SectionPlot& plot) {
  Json points = Json::array();
  for (std::size_t i = 0; i < plot.points.size(); ++i) {
    points.push_back({{"at", point_json(plot.points[i])}, {"label", plot.labels[i]}});
  }
  Json segments = Json::array();
  for (std::size_t i = 0; i < plot.segments.size(); ++i) {
    segments.push_back({{"from", point_json(plot.segments[i].from)},
                        {"to", point_json(plot.segments[i].to)},
                        {"label", plot.labels[plot.points.size() + i]}});
  }
  return {{"plane", "x3 = 1"}, {"points", points}, {"segments", segments}};
}

Json span_geometry_to_json(const SpanGeometry& geo) {
  Json pieces = Json::array();
  for (const auto& piece : geo.max_pieces) pieces.push_back(columns_json(piece));
  return {{"delta_min", round12(geo.delta_min)},
          {"delta_max", round12(geo.delta_max)},
          {"witness_pairs", pairs_json(geo.witness_pairs)},
          {"min_generators", columns_json(geo.min_generators)},
          {"max_pieces", pieces},
          {"section", plot_to_json(geo.section)}};
}

Json report_to_json(const SolveReport& report, const DecisionProblem& problem,
                    const Tolerance& tol) {
  Json alt_consistency = Json::array();
  for (double l : report.alternative_consistency) alt_consistency.push_back(round12(l));

  Json out = {
      {"schema_version", kSchemaVersion},
      {"name", problem.name},
      {"criteria", problem.criteria_labels},
      {"alternatives", problem.alternative_labels},
      {"tolerances", {{"rel_eq", tol.rel_eq}, {"tie_tol", tol.tie_tol}}},
      {"consistency",
       {{"criteria", round12(report.criteria_consistency)}, {"alternatives", alt_consistency}}},
      {"weight_cone",
       {{"lambda", round12(report.weight_cone.lambda_c)},
        {"essential_dim", report.weight_cone.essential_dim()},
        {"generators", columns_json(report.weight_cone.generators)}}},
      {"weight_search", to_string(report.search)},
      {"combined_order", order_json(report.combined, problem)},
  };
  if (report.most) out["most"] = branch_json(*report.most, problem);
  if (report.least) out["least"] = branch_json(*report.least, problem);
  if (report.baseline) out["baseline"] = ranking_json(*report.baseline, problem);
  if (problem.alternative_count() == 3) {
    out["geometry"] = plot_to_json(report_geometry(report, tol));
  }
  return out;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

void emit_report(const SolveReport& report, const DecisionProblem& problem,
                 const Tolerance& tol, std::ostream& out) {
  out << dump_report(report_to_json(report, problem, tol));
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string tuple(const VectorXt& v) {
  std::string out = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v(i));
    out += buf;
  }
  return out + ")";
}

void branch_text(std::ostream& out, const char* title, const char* symbol, const Branch& b,
                 const DecisionProblem& p) {
  out << "\n" << title << "\n";
  out << "  weights: " << tuple(b.weights) << "\n";
  out << "  mu = " << num(b.mu) << "\n";
  out << "  " << symbol << " = " << num(b.delta) << "\n";
  if (!b.witness_pairs.empty()) {
    out << "  witness pairs:";
    for (const auto& w : b.witness_pairs) out << " (" << w.k + 1 << "," << w.l + 1 << ")";
    out << "\n";
  }
  for (std::size_t j = 0; j < b.rankings.size(); ++j) {
    out << "  x" << j + 1 << " = " << tuple(b.rankings[j].vector) << "   "
        << render_ranking(b.rankings[j], p.alternative_labels) << "\n";
  }
  out << "  order: " << b.order.text << "\n";
}

}  // namespace

std::string render_text(const SolveReport& report, const DecisionProblem& problem) {
  std::ostringstream out;
  out << "problem: " << (problem.name.empty() ? "(unnamed)" : problem.name) << "\n";
  out << "criteria: lambda = " << num(report.criteria_consistency) << "\n";
  out << "weight cone: " << report.weight_cone.essential_dim() << " essential generator"
      << (report.weight_cone.essential_dim() == 1 ? "" : "s") << ", search "
      << to_string(report.search) << "\n";
  if (report.most) branch_text(out, "most differentiating", "Delta", *report.most, problem);
  if (report.least) branch_text(out, "least differentiating", "delta", *report.least, problem);
  out << "\ncombined order: " << report.combined.text << "\n";
  if (report.baseline) {
    out << "\nbaseline (classic AHP)\n";
    out << "  x = " << tuple(report.baseline->vector) << "\n";
    out << "  order: " << render_ranking(*report.baseline, problem.alternative_labels) << "\n";
  }
  return out.str();
}

}  // namespace tropahp::io
