#include <algorithm>
#include <cmath>

#include "evlab/errors.hpp"
#include "evlab/specfun.hpp"
#include "evlab/summation.hpp"

namespace evlab {
namespace {

// Computes K_nu(x) for Im(nu) >= 0.
BesselK bessel_k_upper(cplx nu, double x, double rel_tol) {
  const double a = nu.real();
  const double b = nu.imag();
  BesselK out;
  if (x > 700.0 + b * kPi / 2.0) {
    out.underflow = true;
    return out;
  }

  // Contour height: kills the linear phase at t = 0 when b <= x, otherwise
  // sits a distance delta below the edge of the strip of convergence.
  const double delta_min = 1.0 / std::max(b, 1.0);
  double theta = b <= x ? std::asin(b / x) : kPi / 2.0 - delta_min;
  theta = std::min(theta, kPi / 2.0 - delta_min);
  const double delta = kPi / 2.0 - theta;
  const double c = std::cos(theta);
  const double xc = x * c;

  // log-magnitude of the integrand is -xc cosh t + a t - b theta; peak at
  // sinh t* = |a|/xc.
  const double t_star = std::asinh(std::abs(a) / xc) * (a >= 0.0 ? 1.0 : -1.0);
  const double peak = -xc * std::cosh(t_star) + a * t_star;
  const double log_scale = peak - b * theta;
  if (log_scale < -745.0) {
    out.underflow = true;
    return out;
  }
  auto logmag = [&](double t) { return -xc * std::cosh(t) + a * t - peak; };
  const double cut = -std::log(rel_tol) + 8.0;
  double t_hi = std::max(t_star, 0.0) + 0.25;
  while (logmag(t_hi) > -cut) t_hi += 0.25;
  double t_lo = std::min(t_star, 0.0) - 0.25;
  while (logmag(t_lo) > -cut) t_lo -= 0.25;
  const double t_max = std::max(t_hi, -t_lo);

  // Integrand with exp(peak) scaled out.
  auto g = [&](double t) { return std::exp(-x * std::cosh(cplx(t, theta)) + nu * t - peak); };

  double h = std::min(0.5, 0.3 * delta);
  CompensatedComplexSum base;
  base.add(g(0.0));
  for (long k = 1;; ++k) {
    double t = k * h;
    if (t > t_max) break;
    base.add(g(t) + g(-t));
  }
  cplx prev = base.value() * h;
  int nodes = static_cast<int>(2 * (t_max / h) + 1);
  for (int level = 0; level < 8; ++level) {
    double hh = h / 2.0;
    CompensatedComplexSum mid;
    for (long k = 0;; ++k) {
      double t = (2 * k + 1) * hh;
      if (t > t_max) break;
      mid.add(g(t) + g(-t));
    }
    base.add(mid.value());
    cplx cur = base.value() * hh;
    nodes *= 2;
    h = hh;
    bool done = std::abs(cur - prev) <= rel_tol * std::abs(cur) || std::abs(cur - prev) <= 1e-300;
    prev = cur;
    if (done) break;
  }

  out.value = 0.5 * prev * std::exp(cplx(log_scale, a * theta));
  out.nodes = nodes;
  if (std::abs(out.value) == 0.0) out.underflow = true;
  return out;
}

// Ascending series for small x and order away from the integers:
// K_nu(x) = 1/2 sum_k (-1)^k/k! [G(nu-k)(x/2)^{2k-nu} + G(-nu-k)(x/2)^{2k+nu}].
BesselK bessel_k_series(cplx nu, double x) {
  const double lh = std::log(x / 2.0), q = x * x / 4.0;
  cplx gm = gamma(nu), gp = gamma(-nu);
  cplx a = gm * std::exp(-nu * lh), b = gp * std::exp(nu * lh);
  CompensatedComplexSum acc;
  acc.add(a + b);
  for (int k = 1; k < 200; ++k) {
    a *= -q / (double(k) * (nu - double(k)));
    b *= -q / (double(k) * (-nu - double(k)));
    cplx term = a + b;
    acc.add(term);
    if (std::abs(term) <= 1e-17 * std::abs(acc.value())) break;
  }
  BesselK out;
  out.value = 0.5 * acc.value();
  out.nodes = 0;
  return out;
}

}  // namespace

BesselK bessel_k_ex(cplx order, double x, double rel_tol, double order_ceiling) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k: requires finite x > 0");
  if (std::abs(order) > order_ceiling) throw DomainError("bessel_k: |order| above ceiling");
  // K_{-nu} = K_nu; conj(K_nu(x)) = K_{conj nu}(x).
  cplx nu = order.real() < 0.0 ? -order : order;
  bool conj_back = nu.imag() < 0.0;
  if (conj_back) nu = std::conj(nu);
  const bool series = x <= 1.0 && std::abs(std::sin(kPi * nu)) > 0.2 && nu.imag() < 30.0;
  BesselK r = series ? bessel_k_series(nu, x) : bessel_k_upper(nu, x, rel_tol);
  if (nu.real() == 0.0 || nu.imag() == 0.0) r.value = r.value.real();
  if (conj_back) r.value = std::conj(r.value);
  return r;
}

cplx bessel_k(cplx order, double x) { return bessel_k_ex(order, x).value; }

}  // namespace evlab
