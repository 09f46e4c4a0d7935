#pragma once

#include <complex>
#include <span>

namespace evlab {

// Neumaier's variant of Kahan summation. Recaptures the low-order bits lost
// at each addition, so long sums keep full double precision.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> v) noexcept {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

double compensated_sum(std::span<const double> values) noexcept;
std::complex<double> compensated_sum(std::span<const std::complex<double>> values) noexcept;

// Fixed-order pairwise reduction; the result depends only on the input order.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) noexcept;

}  // namespace evlab
