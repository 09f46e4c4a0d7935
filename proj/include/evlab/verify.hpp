#pragma once

#include <string>
#include <vector>

#include "evlab/maass.hpp"
#include "evlab/quadrature_spec.hpp"

namespace evlab {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// The identity suite behind `evlab verify`. Even-form checks use the first
/// even form; parity checks run only when an odd form is supplied.
std::vector<CheckResult> run_verify_suite(const std::vector<MaassForm>& forms, const QuadratureSpec& spec = {},
                                          int threads = 1);

/// One line per check plus a summary line.
std::string format_report(const std::vector<CheckResult>& checks);

}  // namespace evlab
