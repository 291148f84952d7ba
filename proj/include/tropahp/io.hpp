#pragma once

// Problem and report documents.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tropahp/ahp.hpp"

namespace tropahp::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "tropahp/1";

// A problem as written by the user. `json` keeps the original entry forms
// ("1/7" stays a string) so that documents round-trip unchanged.
struct ProblemDocument {
  Json json;
  DecisionProblem problem;
};

// Entry of a comparison matrix: a positive number or a string "p", "p/q"
// with decimal p and q, evaluated in long double before rounding.
double parse_entry(const Json& value, const std::string& path);

// Square matrix given as an array of rows.
MatrixXt parse_matrix(const Json& rows, const std::string& path);

// Parses and validates. Syntax errors carry line and column, schema errors
// the field path, validation errors the offending cell.
ProblemDocument parse_document(std::string_view text, const Tolerance& tol = {});
ProblemDocument document_from_json(const Json& json, const Tolerance& tol = {});
ProblemDocument load_problem(const std::filesystem::path& path, const Tolerance& tol = {});

// Bare matrix file: an array of rows or {"matrix": rows}.
MatrixXt load_matrix(const std::filesystem::path& path);
MatrixXt matrix_from_json(const Json& json);

std::string read_file(const std::filesystem::path& path);

std::string dump_document(const ProblemDocument& doc);

// Rounds to 12 significant digits; the value the report emits.
double round12(double x);

Json report_to_json(const SolveReport& report, const DecisionProblem& problem,
                    const Tolerance& tol);
Json plot_to_json(const SectionPlot& plot);
Json span_geometry_to_json(const SpanGeometry& geo);

// Deterministic serialization: sorted keys, two-space indent, newline.
std::string dump_report(const Json& report);

void emit_report(const SolveReport& report, const DecisionProblem& problem,
                 const Tolerance& tol, std::ostream& out);

// Human-readable report using the symbols ≻, ⪰ and ≡.
std::string render_text(const SolveReport& report, const DecisionProblem& problem);

}  // namespace tropahp::io
