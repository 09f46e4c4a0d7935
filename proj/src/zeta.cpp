#include <cmath>

#include "evlab/errors.hpp"
#include "evlab/specfun.hpp"
#include "evlab/summation.hpp"

namespace evlab {
namespace {

// B_{2j} / (2j)!, j = 1..8
constexpr double kBernoulliOverFact[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
};

}  // namespace

cplx riemann_zeta(cplx s, double im_ceiling) {
  if (std::abs(s - 1.0) <= 1e-14) throw PoleError("riemann_zeta: pole at s = 1");
  if (!(s.real() > 0.0)) throw DomainError("riemann_zeta: requires Re(s) > 0");
  if (std::abs(s.imag()) > im_ceiling) throw DomainError("riemann_zeta: |Im s| above ceiling");

  const long n = std::max(64L, 2L * static_cast<long>(std::ceil(std::abs(s.imag()))));
  CompensatedComplexSum acc;
  for (long k = 1; k < n; ++k) acc.add(std::exp(-s * std::log(static_cast<double>(k))));

  const double ln = std::log(static_cast<double>(n));
  const cplx n_pow = std::exp(-s * ln);  // N^{-s}
  acc.add(n_pow * static_cast<double>(n) / (s - 1.0));
  acc.add(0.5 * n_pow);

  // sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  cplx rising = s;
  cplx npow = n_pow / static_cast<double>(n);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  for (int j = 0; j < 8; ++j) {
    acc.add(kBernoulliOverFact[j] * rising * npow);
    rising *= (s + static_cast<double>(2 * j + 1)) * (s + static_cast<double>(2 * j + 2));
    npow *= inv_n2;
  }
  return acc.value();
}

cplx log_completed_zeta(cplx s, double im_ceiling) {
  if (std::abs(s) <= 1e-14) throw PoleError("completed_zeta: pole at s = 0");
  if (std::abs(s - 1.0) <= 1e-14) throw PoleError("completed_zeta: pole at s = 1");
  if (s.real() <= 0.0) s = 1.0 - s;
  return -0.5 * s * std::log(kPi) + log_gamma(0.5 * s) + std::log(riemann_zeta(s, im_ceiling));
}

cplx completed_zeta(cplx s, double im_ceiling) { return std::exp(log_completed_zeta(s, im_ceiling)); }

}  // namespace evlab
