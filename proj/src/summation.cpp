#include "evlab/summation.hpp"

#include <cmath>

#include "evlab/errors.hpp"
#include "evlab/quadrature_spec.hpp"

namespace evlab {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_levels < 1 || series_cap < 1)
    throw DomainError("QuadratureSpec: rel_tol, abs_tol, max_levels and series_cap must be positive");
}

void CompensatedSum::add(double v) noexcept {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value();
}

std::complex<double> compensated_sum(std::span<const std::complex<double>> values) noexcept {
  CompensatedComplexSum s;
  for (auto v : values) s.add(v);
  return s.value();
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) noexcept {
  if (values.size() <= 16) return compensated_sum(values);
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace evlab
