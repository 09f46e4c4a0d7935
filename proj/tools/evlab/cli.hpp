#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evlab/quadrature_spec.hpp"
#include "evlab/specfun.hpp"

namespace evlab::cli {

enum class Command { verify, scan_mu, mean_value, second_moment, variance, cross };

const char* to_string(Command c);

struct RunConfig {
  Command command = Command::verify;
  std::vector<std::string> form_paths;
  int n = 3;
  double t_min = 50.0;
  double t_max = 100.0;
  double grid_step = 0.0;  // 0: automatic
  cplx a_n = 1.0;
  QuadratureSpec tol;
  std::string out_path;    // empty: stdout
  int threads = 0;         // 0: all hardware threads
};

enum ExitCode { ok = 0, verification_failed = 1, config_error = 2, budget_failure = 3 };

/// Parses flags and the optional INI file named by --config; flags win.
/// Throws ConfigError with the usage text appended. Fills in the shipped
/// forms when no --form is given.
RunConfig parse(int argc, const char* const* argv);

/// Runs one command; CSV goes to out_path (or `out`), the summary to `log`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// parse + run with exit-code mapping; what main() calls.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

/// Dyadic windows T = t_min 2^k with 2T <= t_max.
std::vector<double> dyadic_windows(double t_min, double t_max);

}  // namespace evlab::cli
