#pragma once

#include <complex>

namespace evlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Principal branch of log Gamma(z), analytic off the negative real axis.
/// On the negative real axis the imaginary part is -pi*ceil(-x).
/// Throws PoleError within 1e-14 of a nonpositive integer.
cplx log_gamma(cplx z);
cplx gamma(cplx z);

/// log Gamma(w + d) - log Gamma(w) without the cancellation of two large
/// logarithms when |w| is large.
cplx log_gamma_ratio(cplx w, cplx d);

/// Riemann zeta for Re(s) > 0 by Euler-Maclaurin. Throws PoleError near
/// s = 1 and DomainError when |Im s| exceeds im_ceiling or Re s <= 0.
cplx riemann_zeta(cplx s, double im_ceiling = 5000.0);

/// log of pi^{-s/2} Gamma(s/2) zeta(s). Uses the reflection s -> 1-s when
/// Re(s) <= 0. The imaginary part is a continuous-enough branch for
/// exponentiation; only exp() of it is meaningful.
cplx log_completed_zeta(cplx s, double im_ceiling = 5000.0);
cplx completed_zeta(cplx s, double im_ceiling = 5000.0);

struct BesselK {
  cplx value;
  bool underflow = false;
  int nodes = 0;
};

/// K_nu(x) for complex order and x > 0, from the full-line integral
/// (1/2) int exp(-x cosh t + nu t) dt on a contour shifted to Im t = theta.
/// Exactly real for real or purely imaginary order.
BesselK bessel_k_ex(cplx order, double x, double rel_tol = 1e-13,
                    double order_ceiling = 200.0);
cplx bessel_k(cplx order, double x);

}  // namespace evlab
