#include <cmath>
#include <limits>

#include "evlab/errors.hpp"
#include "evlab/specfun.hpp"

namespace evlab {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,           -1.0 / 360.0,          1.0 / 1260.0,
    -1.0 / 1680.0,        1.0 / 1188.0,          -691.0 / 360360.0,
    1.0 / 156.0,          -3617.0 / 122400.0,    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

cplx stirling_series(cplx z) {
  cplx w = 1.0 / z;
  cplx w2 = w * w;
  cplx corr = 0.0;
  for (int k = 9; k >= 0; --k) corr = corr * w2 + kStirling[k];
  return corr * w;
}

cplx stirling(cplx z) { return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + stirling_series(z); }

bool stirling_region(cplx z) { return z.real() > 0.0 && (std::abs(z.imag()) >= 15.0 || z.real() >= 15.0); }

// Valid for Re z >= 0.5.
cplx log_gamma_right(cplx z) {
  if (std::abs(z.imag()) >= 15.0 || z.real() >= 15.0) return stirling(z);
  int shift = static_cast<int>(std::ceil(15.0 - z.real()));
  cplx acc = 0.0;
  for (int k = 0; k < shift; ++k) acc += std::log(z + static_cast<double>(k));
  return stirling(z + static_cast<double>(shift)) - acc;
}

// log sin(pi z) for Im z > 0, continuous in the upper half-plane.
cplx log_sin_pi_upper(cplx z) {
  const cplx i(0.0, 1.0);
  cplx e = std::exp(2.0 * kPi * i * z);
  cplx l1p = std::abs(e) < 1e-8 ? -e - 0.5 * e * e : std::log(1.0 - e);
  return -i * kPi * z + i * (kPi / 2.0) - std::log(2.0) + l1p;
}

cplx reflected_upper(cplx z) {
  return kLogPi - log_sin_pi_upper(z) - log_gamma_right(1.0 - z);
}

// Integer multiple of 2 pi i separating reflected_upper from the analytic
// continuation; constant on the upper half-plane.
double branch_offset() {
  static const double offset = [] {
    const cplx z0(0.5, 1.0);
    cplx d = log_gamma_right(z0) - reflected_upper(z0);
    return 2.0 * kPi * std::round(d.imag() / (2.0 * kPi));
  }();
  return offset;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0) {
    double x = z.real();
    if (x <= 0.0 && std::abs(x - std::round(x)) <= 1e-14)
      throw PoleError("log_gamma: pole at nonpositive integer");
    if (x >= 0.5) return log_gamma_right(x).real();
    double re = kLogPi - std::log(std::abs(std::sin(kPi * (x - std::round(x))))) - log_gamma_right(1.0 - x).real();
    return {re, x > 0.0 ? 0.0 : -kPi * std::ceil(-x)};
  }
  if (z.real() <= 0.0 && std::abs(z.imag()) <= 1e-14 &&
      std::abs(z.real() - std::round(z.real())) <= 1e-14)
    throw PoleError("log_gamma: pole at nonpositive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  if (z.imag() > 0.0) return reflected_upper(z) + cplx(0.0, branch_offset());
  return std::conj(reflected_upper(std::conj(z)) + cplx(0.0, branch_offset()));
}

cplx log_gamma_ratio(cplx w, cplx d) {
  cplx wd = w + d;
  if (!stirling_region(w) || !stirling_region(wd)) return log_gamma(wd) - log_gamma(w);
  // (w+d-1/2) log(w+d) - (w-1/2) log w - d, rearranged so nothing of size
  // |w log w| is formed.
  cplx q = d / w;
  cplx u = 1.0 + q;
  cplx l1p = u == 1.0 ? q : std::log(u) * (q / (u - 1.0));
  return (w - 0.5) * l1p + d * std::log(wd) - d + stirling_series(wd) - stirling_series(w);
}

cplx gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() > 0.0) return std::tgamma(z.real());
  return std::exp(log_gamma(z));
}

}  // namespace evlab
