#include "tropahp/cli.hpp"

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tropahp/io.hpp"
#include "tropahp/service.hpp"

namespace tropahp {

namespace {

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ParseError("cannot write " + path);
  file << text;
}

io::Json rows(const MatrixXt& m) {
  io::Json j = io::Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    io::Json row = io::Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(io::round12(m(i, k)));
    j.push_back(row);
  }
  return j;
}

service::Server* running_server = nullptr;

void on_signal(int) {
  if (running_server) running_server->stop();
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tropical pairwise-comparison ranking"};
  app.name("tropahp");
  app.require_subcommand(1);

  std::string problem_path, matrix_path, geometry_path, out_path;
  std::string mode = "all", format = "json";
  bool baseline = false, normalize = false;
  Tolerance tol;

  auto* solve_cmd = app.add_subcommand("solve", "Rank the alternatives of a problem document");
  solve_cmd->add_option("problem", problem_path, "Problem JSON")->required();
  solve_cmd->add_option("--mode", mode, "most, least or all")
      ->check(CLI::IsMember({"most", "least", "all"}));
  solve_cmd->add_flag("--baseline", baseline, "Include the classic AHP ranking");
  solve_cmd->add_option("--tie-tol", tol.tie_tol, "Ranking tie tolerance");
  solve_cmd->add_option("--rel-eq", tol.rel_eq, "Relative equality tolerance");
  solve_cmd->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  solve_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

  auto* spectral_cmd = app.add_subcommand("spectral", "Print the spectral radius of a matrix");
  spectral_cmd->add_option("matrix", matrix_path, "Matrix JSON")->required();

  auto* kleene_cmd = app.add_subcommand("kleene", "Print the Kleene star of a matrix");
  kleene_cmd->add_option("matrix", matrix_path, "Matrix JSON")->required();
  kleene_cmd->add_flag("--normalize", normalize, "Divide by the spectral radius first");

  auto* geometry_cmd =
      app.add_subcommand("geometry", "Section by x3 = 1 of a 3-alternative problem or 3x3 matrix");
  geometry_cmd->add_option("file", geometry_path, "Problem or matrix JSON")->required();

  const char* env_data = std::getenv("TROPAHP_DATA");
  std::string data_dir = env_data ? env_data : "tropahp-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--data", data_dir, "Session directory (default $TROPAHP_DATA)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'tropahp --help' for usage\n";
    return 2;
  }

  try {
    if (*solve_cmd) {
      tol.check();
      const auto doc = io::load_problem(problem_path, tol);
      SolveOptions options;
      options.mode = parse_solve_mode(mode);
      options.baseline = baseline;
      const SolveReport report = solve(doc.problem, tol, options);
      const std::string text = format == "text"
                                   ? io::render_text(report, doc.problem)
                                   : io::dump_report(io::report_to_json(report, doc.problem, tol));
      write_output(text, out_path, out);
    } else if (*spectral_cmd) {
      out << fmt12(spectral_radius(io::load_matrix(matrix_path))) << "\n";
    } else if (*kleene_cmd) {
      MatrixXt a = io::load_matrix(matrix_path);
      const double lambda = spectral_radius(a);
      if (normalize) {
        if (!(lambda > 0)) throw Error(ErrorCode::ZeroSpectralRadius, "spectral radius is zero");
        a /= lambda;
      }
      io::Json j = {{"lambda", io::round12(lambda)},
                    {"normalized", normalize},
                    {"star", rows(kleene_star(a, tol))}};
      out << io::dump_report(j);
    } else if (*geometry_cmd) {
      const io::Json j = io::Json::parse(io::read_file(geometry_path));
      if (j.is_object() && j.contains("schema_version")) {
        const auto doc = io::document_from_json(j, tol);
        if (doc.problem.alternative_count() != 3) {
          throw ValidationError("geometry needs exactly 3 alternatives");
        }
        const SolveReport report = solve(doc.problem, tol);
        out << io::dump_report({{"geometry", io::plot_to_json(report_geometry(report, tol))}});
      } else {
        out << io::dump_report(io::span_geometry_to_json(span_geometry(io::matrix_from_json(j), tol)));
      }
    } else if (*serve_cmd) {
      service::Server server(data_dir);
      const int bound = server.bind(host, port);
      err << "listening on http://" << host << ":" << bound << " (data: " << data_dir << ")\n";
      running_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen();
      running_server = nullptr;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tropahp
