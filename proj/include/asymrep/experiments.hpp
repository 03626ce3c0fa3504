#pragma once

// Named experiments behind the command-line tool. Each returns report rows;
// computational errors propagate as exceptions.

#include <optional>
#include <string>
#include <vector>

#include "asymrep/report.hpp"

namespace asymrep {

/// One swept integer parameter, e.g. "n=4:64:*2", "m=2,4,8" or "n=1:4".
struct Sweep {
  std::string name;
  std::vector<int> values;  // ascending, distinct
};

/// `a:b:*k` multiplies by k, `a:b:+k` or `a:b:k` adds k, `a:b` steps by 1.
Sweep parse_sweep(const std::string& text);

struct ExperimentConfig {
  std::string experiment;
  std::optional<std::string> presentation;
  std::optional<std::string> rep;  // "voiculescu" or "fourier"
  std::optional<int> K, M, buffer;
  std::optional<Sweep> sweep;
  std::string f = "poly-bump";
  std::optional<double> tol;
};

const std::vector<std::string>& experiment_names();

/// Throws DomainError for an unknown name or an invalid configuration.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config);

/// 0 when every verdict is pass or info, 2 when any row fails.
int exit_code(const std::vector<ReportRow>& rows);

}  // namespace asymrep
