#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tropahp/cli.hpp"
#include "tropahp/io.hpp"

using namespace tropahp;
using io::Json;

namespace {

std::string fixture(const char* name) { return std::string(TROPAHP_FIXTURES) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "tropahp-test-io";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

Json vacation_json() { return Json::parse(io::read_file(fixture("vacation.json"))); }

}  // namespace

TEST_CASE("parse_entry forms") {
  CHECK(io::parse_entry(Json(3), "x") == 3.0);
  CHECK(io::parse_entry(Json(0.25), "x") == 0.25);
  CHECK(io::parse_entry(Json("7"), "x") == 7.0);
  CHECK(io::parse_entry(Json("1/7"), "x") == 1.0 / 7);
  CHECK(io::parse_entry(Json("2.5/5"), "x") == 0.5);
  CHECK(io::parse_entry(Json(" 1/3 "), "x") == 1.0 / 3);
  for (const char* bad : {"", "a", "1/", "/3", "1//3", "1/3x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(io::parse_entry(Json(bad), "x"), ParseError);
  }
  for (const char* bad : {"1/0", "0", "-2", "1/-3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(io::parse_entry(Json(bad), "x"), Error);
  }
  CHECK_THROWS_AS(io::parse_entry(Json(nullptr), "x"), ParseError);
  CHECK_THROWS_AS(io::parse_entry(Json(-1.0), "x"), ValidationError);
  try {
    io::parse_entry(Json("q"), "criteria_matrix[1][2]");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("criteria_matrix[1][2]") != std::string::npos);
  }
}

TEST_CASE("vacation document loads") {
  const auto doc = io::load_problem(fixture("vacation.json"));
  CHECK(doc.problem.criteria.rows() == 5);
  CHECK(doc.problem.alternatives.size() == 5);
  CHECK(doc.problem.alternatives.front().rows() == 4);
  CHECK(doc.problem.alternative_labels == std::vector<std::string>{"S", "Q", "D", "C"});
  CHECK(doc.problem.criteria(0, 1) == 1.0 / 5);
}

TEST_CASE("reciprocity violations are rejected with the cell") {
  Json j = vacation_json();
  j["criteria_matrix"][0][1] = 2;
  j["criteria_matrix"][1][0] = 3;
  try {
    io::document_from_json(j);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("criteria_matrix (1,2)") != std::string::npos);
  }
}

TEST_CASE("schema errors name the field") {
  Json j = vacation_json();
  j.erase("alternatives");
  CHECK_THROWS_AS(io::document_from_json(j), ParseError);

  j = vacation_json();
  j["schema_version"] = "other/9";
  CHECK_THROWS_AS(io::document_from_json(j), ParseError);

  j = vacation_json();
  j["alternative_matrices"][1][2] = Json::array({1, 2});
  try {
    io::document_from_json(j);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("alternative_matrices[1]") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    io::parse_document("{\n  \"name\": \"x\",\n  oops\n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3, column") != std::string::npos);
  }
  CHECK_THROWS_AS(io::load_problem("/nonexistent/problem.json"), ParseError);
}

TEST_CASE("documents round-trip unchanged") {
  for (const char* name : {"vacation.json", "school.json"}) {
    const auto doc = io::load_problem(fixture(name));
    const std::string once = io::dump_document(doc);
    const auto again = io::parse_document(once);
    CHECK(io::dump_document(again) == once);
    CHECK(again.json == doc.json);
    CHECK(again.problem.criteria == doc.problem.criteria);
    for (std::size_t k = 0; k < doc.problem.alternatives.size(); ++k)
      CHECK(again.problem.alternatives[k] == doc.problem.alternatives[k]);
  }
  // Rational strings survive as strings.
  const auto doc = io::load_problem(fixture("vacation.json"));
  CHECK(Json::parse(io::dump_document(doc))["criteria_matrix"][0][1] == "1/5");
}

TEST_CASE("matrix files") {
  const MatrixXt a = io::load_matrix(fixture("a_ex1.json"));
  CHECK(a.rows() == 3);
  CHECK(a(1, 0) == 4.0 / 3);
  CHECK(io::matrix_from_json(Json::parse("[[1, \"1/2\"], [2, 1]]"))(0, 1) == 0.5);
  CHECK_THROWS_AS(io::matrix_from_json(Json::parse("[[1, 2], [3]]")), Error);
}

TEST_CASE("reports are deterministic") {
  for (const char* name : {"vacation.json", "school.json"}) {
    const auto doc = io::load_problem(fixture(name));
    SolveOptions options;
    options.baseline = true;
    const std::string a = io::dump_report(io::report_to_json(solve(doc.problem, {}, options), doc.problem, {}));
    const std::string b = io::dump_report(io::report_to_json(solve(doc.problem, {}, options), doc.problem, {}));
    CHECK(a == b);
    CHECK(a.find("^(") == std::string::npos);
    CHECK(a.back() == '\n');
  }
}

TEST_CASE("report contents") {
  const auto vac = io::load_problem(fixture("vacation.json"));
  const Json r = io::report_to_json(solve(vac.problem), vac.problem, {});
  CHECK(r["schema_version"] == io::kSchemaVersion);
  CHECK_FALSE(r.contains("geometry"));
  CHECK(r["combined_order"]["text"] == "C ⪰ S ≻ D ⪰ Q");
  CHECK(r["combined_order"]["total"] == true);
  CHECK(oracle::near(r["most"]["delta"].get<double>(), 1.4424, 1e-3));
  const Json pairs = r["most"]["witness_pairs"];
  CHECK(pairs == Json::parse("[[1,2],[3,2],[3,3]]"));

  const auto sch = io::load_problem(fixture("school.json"));
  const Json s = io::report_to_json(solve(sch.problem), sch.problem, {});
  REQUIRE(s.contains("geometry"));
  CHECK(s["geometry"]["plane"] == "x3 = 1");
  CHECK_FALSE(s["combined_order"]["total"].get<bool>());
}

TEST_CASE("cli exit codes") {
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({}).code == 2);
  CHECK(cli({"solve"}).code == 2);
  CHECK(cli({"solve", fixture("vacation.json"), "--mode", "median"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"solve", "/nonexistent.json"}).code == 1);

  Json j = vacation_json();
  j["criteria_matrix"][0][1] = 2;
  const auto bad = temp_file("bad.json", j.dump());
  const Run r = cli({"solve", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("(1,2)") != std::string::npos);
  CHECK(cli({"spectral", temp_file("syntax.json", "[[1, 2]").string()}).code == 1);
}

TEST_CASE("cli solve") {
  const Run text = cli({"solve", fixture("vacation.json"), "--format", "text"});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("combined order: C ⪰ S ≻ D ⪰ Q") != std::string::npos);

  const Run school = cli({"solve", fixture("school.json"), "--format", "text", "--baseline"});
  REQUIRE(school.code == 0);
  const auto at = school.out.find("baseline");
  REQUIRE(at != std::string::npos);
  CHECK(school.out.find("B ≻ A ≻ C", at) != std::string::npos);

  const Run json1 = cli({"solve", fixture("vacation.json")});
  const Run json2 = cli({"solve", fixture("vacation.json")});
  CHECK(json1.out == json2.out);
  CHECK(Json::parse(json1.out)["combined_order"]["text"] == "C ⪰ S ≻ D ⪰ Q");

  const Run most = cli({"solve", fixture("vacation.json"), "--mode", "most"});
  const Json m = Json::parse(most.out);
  CHECK(m.contains("most"));
  CHECK_FALSE(m.contains("least"));

  const auto out = std::filesystem::temp_directory_path() / "tropahp-test-io" / "report.json";
  std::filesystem::remove(out);
  CHECK(cli({"solve", fixture("vacation.json"), "--out", out.string()}).code == 0);
  CHECK(io::read_file(out) == json1.out);
}

TEST_CASE("cli matrix tools") {
  const Run spectral = cli({"spectral", fixture("c_vac.json")});
  REQUIRE(spectral.code == 0);
  CHECK(spectral.out == "3.34370152488\n");

  const Run kleene = cli({"kleene", fixture("c_vac.json"), "--normalize"});
  REQUIRE(kleene.code == 0);
  const Json k = Json::parse(kleene.out);
  CHECK(k["normalized"] == true);
  CHECK(k["star"][4][4] == 1.0);
  CHECK(cli({"kleene", fixture("c_vac.json")}).code == 1);

  const Run geo = cli({"geometry", fixture("a_ex2.json")});
  REQUIRE(geo.code == 0);
  const Json g = Json::parse(geo.out);
  CHECK(g["delta_max"] == 2.0);
  CHECK(g["witness_pairs"] == Json::parse("[[1,3],[2,3],[3,1],[3,2]]"));
  CHECK(g["section"]["plane"] == "x3 = 1");
  CHECK(cli({"geometry", fixture("school.json")}).code == 0);
  CHECK(cli({"geometry", fixture("vacation.json")}).code == 1);
}
