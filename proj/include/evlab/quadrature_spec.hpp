#pragma once

namespace evlab {

/// Tolerances and truncation limits shared by every integrator and series.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_levels = 12;     // adaptive bisection / step-halving depth
  long series_cap = 200000;

  /// Throws DomainError unless every field is positive.
  void validate() const;
};

}  // namespace evlab
