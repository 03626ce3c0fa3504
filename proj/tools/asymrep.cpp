#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "asymrep/error.hpp"
#include "asymrep/experiments.hpp"
#include "asymrep/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Run numerical experiments on almost representations and their Calkin models."};
  app.set_help_flag("-h,--help", "Show help");

  asymrep::ExperimentConfig cfg;
  std::string presentation, rep, sweep, out_format = "csv", output;
  int K = 0, M = 0, buffer = 0;
  double tol = 0.0;
  bool list = false;

  std::string names;
  for (const auto& n : asymrep::experiment_names()) names += (names.empty() ? "" : ", ") + n;

  app.add_option("experiment", cfg.experiment, "One of: " + names);
  app.add_flag("--list", list, "List experiment names and exit");
  auto* o_pres = app.add_option("--presentation", presentation, "Group presentation, e.g. \"<a,b|[a,b]>\"");
  auto* o_rep = app.add_option("--rep", rep, "Representation family: voiculescu or fourier");
  auto* o_k = app.add_option("--k", K, "Number of levels K");
  auto* o_m = app.add_option("--m-tail", M, "Tail copies M of each W block");
  auto* o_b = app.add_option("--buffer", buffer, "Interior buffer b for index filtering");
  auto* o_sweep = app.add_option("--sweep", sweep, "Swept parameter, e.g. n=4:64:*2 or m=2,4,8");
  app.add_option("--f", cfg.f, "Suspension function: poly-bump, sin or zero");
  auto* o_tol = app.add_option("--tol", tol, "Tolerance for pass/fail checks");
  app.add_option("--out", out_format, "Report format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", output, "Write the report to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (list) {
    for (const auto& n : asymrep::experiment_names()) std::cout << n << '\n';
    return 0;
  }
  if (cfg.experiment.empty()) {
    std::cerr << "error: missing experiment name (use --list)\n";
    return 1;
  }

  try {
    if (*o_pres) cfg.presentation = presentation;
    if (*o_rep) cfg.rep = rep;
    if (*o_k) cfg.K = K;
    if (*o_m) cfg.M = M;
    if (*o_b) cfg.buffer = buffer;
    if (*o_tol) cfg.tol = tol;
    if (*o_sweep) cfg.sweep = asymrep::parse_sweep(sweep);
    const auto format = asymrep::format_from_string(out_format);

    const auto rows = asymrep::run_experiment(cfg);
    if (output.empty()) {
      std::ostringstream buf;
      asymrep::emit(buf, rows, format);
      std::cout << buf.str();
    } else {
      asymrep::emit_to_file(output, rows, format);
    }
    return asymrep::exit_code(rows);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
