#pragma once

#include <functional>
#include <span>

#include "evlab/maass.hpp"
#include "evlab/quadrature_spec.hpp"
#include "evlab/specfun.hpp"

namespace evlab {

struct UpperHalfPoint {
  double x = 0.0;
  double y = 1.0;
};

/// SL2(Z)-equivalent point with |x| <= 1/2 and x^2 + y^2 >= 1.
UpperHalfPoint reduce(UpperHalfPoint z);

/// Truncated Fourier expansion
///   E(z,s) = y^s + (Lambda(2s-1)/Lambda(2s)) y^{1-s}
///          + (4/Lambda(2s)) sum_{m<=M} m^{s-1/2} sigma_{1-2s}(m) sqrt(y) K_{s-1/2}(2 pi m y) cos(2 pi m x).
cplx eisenstein_value(cplx s, UpperHalfPoint z, long M_max);

/// Smallest M for which the dropped Fourier terms are below tol relative to
/// the constant term, at height y.
long eisenstein_terms(cplx s, double y, double tol = 1e-15);

/// phi(z) = rho(1) sqrt(y) sum_{m<=M} lambda(m) K_{it}(2 pi m y) cos(2 pi m x),
/// sin for odd forms, rho(1) = +sqrt(rho1_squared).
double maass_value(const MaassForm& form, UpperHalfPoint z, long M_max);
long maass_terms(const MaassForm& form, double y, double tol = 1e-16);

/// int_0^inf K_{i mu}(2 pi y) K_nu(2 pi y) y^s dy/y by quadrature.
cplx bessel_moment(double mu, cplx nu, cplx s);
/// The Gamma-product closed form of the same integral.
cplx bessel_moment_closed(double mu, cplx nu, cplx s);

struct UnfoldingParams {
  int n = 3;
  double t = 1.0;
  cplx s = 2.0;
};

/// Unfolded series: (2 rho(1)/Lambda(2 - n/2 + int)) * sum_m lambda(m) sigma_{n/2-1-int}(m)
/// m^{-(s - 1/2 + n/4 - int/2)} * bessel_moment(t_phi, 1/2 - n/4 + int/2, s).
/// The m-sum is exponentially smoothed at length M_max/40 with one
/// Richardson step unless sharp is set.
cplx i_series(const MaassForm& form, int n, double t, cplx s, long M_max = 100000, bool sharp = false);
cplx i_closed(const MaassForm& form, int n, double t, cplx s);

struct TripleProductResult {
  cplx value;
  double quadrature_err = 0.0;
  long points_used = 0;
  bool converged = true;  // false: levels exhausted, value is the last partial result
};

/// Integrand evaluated along a row of constant height: out[k] = f(xs[k], y).
using RowIntegrand = std::function<void(double y, std::span<const double> xs, std::span<cplx> out)>;

/// int over the fundamental domain (y <= y_cap) of f dx dy / y^2 by tensor
/// Gauss-Legendre on rows of constant y. The rule is doubled until two
/// successive levels agree; the error is their difference. y_cap may be
/// +infinity, in which case the cusp is mapped to v = 1/y.
TripleProductResult fundamental_domain_integral(const RowIntegrand& f, const QuadratureSpec& spec = {},
                                                double y_cap = 12.0, int threads = 1);
TripleProductResult fundamental_domain_integral(const std::function<cplx(double, double)>& f,
                                                const QuadratureSpec& spec = {}, double y_cap = 12.0,
                                                int threads = 1);

/// int phi(z) E(z, s1) E(z, s2) dmu over the fundamental domain truncated at
/// y = 12; the discarded cuspidal tail is bounded and added to the error.
TripleProductResult triple_product(const MaassForm& form, cplx s1, cplx s2, const QuadratureSpec& spec = {},
                                   int threads = 1);

}  // namespace evlab
