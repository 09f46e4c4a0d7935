#include "evlab/eisen2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/parallel.hpp"
#include "evlab/quadrature.hpp"
#include "evlab/summation.hpp"

namespace evlab {

namespace {

constexpr cplx I(0.0, 1.0);

struct EisensteinRow {
  cplx constant;
  std::vector<cplx> a;  // a[m-1] multiplies cos(2 pi m x)
};

EisensteinRow eisenstein_row(cplx s, double y, long M) {
  if (std::abs(s - 1.0) < 1e-12) throw PoleError("eisenstein_value: pole at s = 1");
  if (std::abs(2.0 * s - 1.0) < 1e-12) throw PoleError("eisenstein_value: s = 1/2 is a removable point, perturb s");
  const cplx l2s = log_completed_zeta(2.0 * s);
  const cplx scat = std::exp(log_completed_zeta(2.0 * s - 1.0) - l2s);
  EisensteinRow r;
  r.constant = std::exp(s * std::log(y)) + scat * std::exp((1.0 - s) * std::log(y));
  const cplx coef = 4.0 * std::exp(-l2s) * std::sqrt(y);
  const cplx order = s - 0.5;
  r.a.reserve(M);
  for (long m = 1; m <= M; ++m) {
    BesselK k = bessel_k_ex(order, 2.0 * kPi * m * y);
    if (k.underflow) break;
    r.a.push_back(coef * std::exp((s - 0.5) * std::log(double(m))) * divisor_sigma(m, 1.0 - 2.0 * s) * k.value);
  }
  return r;
}

cplx eval_cos(const EisensteinRow& r, double x) {
  CompensatedComplexSum acc;
  acc.add(r.constant);
  for (std::size_t j = 0; j < r.a.size(); ++j) acc.add(r.a[j] * std::cos(2.0 * kPi * double(j + 1) * x));
  return acc.value();
}

struct MaassRow {
  bool odd = false;
  std::vector<double> a;
};

MaassRow maass_row(const MaassForm& form, double y, long M) {
  MaassRow r;
  r.odd = !form.is_even();
  const double rho = std::sqrt(form.rho1_sq());
  const cplx order(0.0, form.spectral_param());
  r.a.reserve(M);
  for (long m = 1; m <= M; ++m) {
    BesselK k = bessel_k_ex(order, 2.0 * kPi * m * y);
    if (k.underflow) break;
    r.a.push_back(rho * std::sqrt(y) * form.lambda(m) * k.value.real());
  }
  return r;
}

double eval_maass(const MaassRow& r, double x) {
  CompensatedSum acc;
  for (std::size_t j = 0; j < r.a.size(); ++j) {
    double arg = 2.0 * kPi * double(j + 1) * x;
    acc.add(r.a[j] * (r.odd ? std::sin(arg) : std::cos(arg)));
  }
  return acc.value();
}

// sigma_a(m) for 1 <= m <= N by a smallest-prime-factor sieve.
std::vector<cplx> sigma_table(long N, cplx a) {
  std::vector<int> spf(N + 1, 0);
  for (long i = 2; i <= N; ++i)
    if (spf[i] == 0)
      for (long j = i; j <= N; j += i)
        if (spf[j] == 0) spf[j] = static_cast<int>(i);
  std::vector<cplx> sig(N + 1, 0.0);
  if (N >= 1) sig[1] = 1.0;
  for (long m = 2; m <= N; ++m) {
    long p = spf[m], q = m, pk = 1;
    while (q % p == 0) q /= p, pk *= p;
    // sigma_a(p^k) = 1 + p^a + ... + p^{ka}
    cplx pa = std::exp(a * std::log(double(p))), term = 1.0, acc = 1.0;
    for (long e = p; e <= pk; e *= p) term *= pa, acc += term;
    sig[m] = sig[q] * acc;
  }
  return sig;
}

}  // namespace

UpperHalfPoint reduce(UpperHalfPoint z) {
  if (!(z.y > 0.0)) throw DomainError("reduce: requires y > 0");
  for (int it = 0; it < 10000; ++it) {
    z.x -= std::round(z.x);
    double r2 = z.x * z.x + z.y * z.y;
    if (r2 >= 1.0 - 1e-15) return z;
    z = {-z.x / r2, z.y / r2};
  }
  return z;
}

long eisenstein_terms(cplx s, double y, double tol) {
  double x_needed = kPi * std::abs(s.imag()) + 2.0 * std::abs(s.real()) + 5.0 - std::log(tol);
  return std::max(1L, static_cast<long>(std::ceil(x_needed / (2.0 * kPi * y))));
}

cplx eisenstein_value(cplx s, UpperHalfPoint z, long M_max) {
  if (!(z.y > 0.0)) throw DomainError("eisenstein_value: requires y > 0");
  return eval_cos(eisenstein_row(s, z.y, M_max), z.x);
}

long maass_terms(const MaassForm& form, double y, double tol) {
  double x_needed = kPi * form.spectral_param() / 2.0 + 5.0 - std::log(tol);
  return std::max(1L, static_cast<long>(std::ceil(x_needed / (2.0 * kPi * y))));
}

double maass_value(const MaassForm& form, UpperHalfPoint z, long M_max) {
  if (!(z.y > 0.0)) throw DomainError("maass_value: requires y > 0");
  return eval_maass(maass_row(form, z.y, M_max), z.x);
}

cplx bessel_moment(double mu, cplx nu, cplx s) {
  const double gap = s.real() - std::abs(nu.real());
  if (!(gap > 0.0)) throw DomainError("bessel_moment: diverges unless Re(s) > |Re(nu)|");
  const double big = std::abs(mu) + std::abs(nu) + 25.0;
  const double x_right = std::log(big / (2.0 * kPi));
  const double x_left = std::log(0.1) - (45.0 + std::abs(nu.real()) * 3.0) / gap;
  if ((x_right - x_left) / 0.01 > 2e6) throw BudgetExceeded("bessel_moment: Re(s) - |Re(nu)| too small");

  auto F = [&](double x) {
    double arg = 2.0 * kPi * std::exp(x);
    return bessel_k(cplx(0.0, mu), arg) * bessel_k(nu, arg) * std::exp(s * x);
  };
  // Trapezoid in x = log y on a grid anchored at x_right; halve until stable.
  double h = 0.125;
  long count = static_cast<long>(std::ceil((x_right - x_left) / h));
  CompensatedComplexSum acc;
  for (long k = 0; k <= count; ++k) acc.add(F(x_right - k * h));
  cplx prev = acc.value() * h;
  for (int level = 0; level < 6; ++level) {
    for (long k = 0; k < count; ++k) acc.add(F(x_right - (k + 0.5) * h));
    h /= 2.0;
    count *= 2;
    cplx cur = acc.value() * h;
    if (std::abs(cur - prev) <= 1e-13 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

cplx bessel_moment_closed(double mu, cplx nu, cplx s) {
  if (!(s.real() > std::abs(nu.real())))
    throw DomainError("bessel_moment_closed: diverges unless Re(s) > |Re(nu)|");
  const cplx a = nu / 2.0, p = (s + I * mu) / 2.0, q = (s - I * mu) / 2.0;
  cplx lg = log_gamma(p + a) + log_gamma(q + a) + log_gamma(p - a) + log_gamma(q - a);
  return std::exp(lg - s * std::log(kPi) - std::log(8.0) - log_gamma(s));
}

namespace {

void check_unfolding_args(const MaassForm& form, int n, cplx s, const char* who) {
  if (!form.is_even()) throw DomainError(std::string(who) + ": defined for even forms only");
  if (n < 3) throw DomainError(std::string(who) + ": requires n >= 3");
  if (s.real() < 1.6) throw DomainError(std::string(who) + ": requires Re(s) >= 1.6");
}

// 2 rho(1) / Lambda(2 - n/2 + int)
cplx unfolding_prefactor(const MaassForm& form, int n, double t) {
  return 2.0 * std::sqrt(form.rho1_sq()) * std::exp(-log_completed_zeta(cplx(2.0 - n / 2.0, n * t)));
}

}  // namespace

cplx i_series(const MaassForm& form, int n, double t, cplx s, long M_max, bool sharp) {
  check_unfolding_args(form, n, s, "i_series");
  if (M_max < 1) throw DomainError("i_series: M_max must be positive");
  if (M_max > form.table_limit())
    throw InsufficientCoefficients("i_series: M_max exceeds the coefficient table", M_max);
  const auto& tab = form.table();
  for (long m = 1; m <= M_max; ++m)
    if (std::isnan(tab[m])) throw InsufficientCoefficients("i_series: Hecke eigenvalue unavailable", m);

  const cplx W = s - 0.5 + n / 4.0 - I * (n * t / 2.0);
  const cplx a(n / 2.0 - 1.0, -n * t);
  const auto sig = sigma_table(M_max, a);
  std::vector<cplx> c(M_max + 1, 0.0);
  for (long m = 1; m <= M_max; ++m) c[m] = tab[m] * sig[m] * std::exp(-W * std::log(double(m)));

  cplx D;
  if (sharp) {
    D = compensated_sum(std::span<const cplx>(c.data() + 1, M_max));
  } else {
    // e^{-m/X} smoothing; S(X) = D + O(1/X), removed by one Richardson step.
    const double X = M_max / 40.0;
    CompensatedComplexSum s1, s2;
    for (long m = 1; m <= M_max; ++m) {
      s1.add(c[m] * std::exp(-m / X));
      s2.add(c[m] * std::exp(-2.0 * m / X));
    }
    D = 2.0 * s1.value() - s2.value();
  }
  const cplx nu(0.5 - n / 4.0, n * t / 2.0);
  return unfolding_prefactor(form, n, t) * D * bessel_moment(form.spectral_param(), nu, s);
}

cplx i_closed(const MaassForm& form, int n, double t, cplx s) {
  check_unfolding_args(form, n, s, "i_closed");
  const double tp = form.spectral_param();
  const cplx a = cplx(0.5 - n / 4.0, n * t / 2.0) / 2.0;
  const cplx p = (s + I * tp) / 2.0, q = (s - I * tp) / 2.0;
  const cplx lg = log_gamma(p + a) + log_gamma(q + a) + log_gamma(p - a) + log_gamma(q - a);
  const cplx W = s - 0.5 + n / 4.0 - I * (n * t / 2.0);
  const cplx L1 = l_value(form, W).value;
  const cplx L2 = l_value(form, s + 0.5 - n / 4.0 + I * (n * t / 2.0)).value;
  const cplx log_den = log_completed_zeta(cplx(2.0 - n / 2.0, n * t)) + log_completed_zeta(2.0 * s);
  return std::sqrt(form.rho1_sq()) / 4.0 * std::exp(lg - 2.0 * s * std::log(kPi) - log_den) * L1 * L2;
}

namespace {

constexpr double kIntegrandRelErr = 1e-13;

struct Row {
  double y;
  std::vector<double> xs, wx;  // wx already includes the y-weight and 1/y^2
};

void append_panel_rows(std::vector<Row>& rows, double lo, double hi, int ny, const GaussRule& gx,
                       bool inverted) {
  const GaussRule& gy = gauss_legendre(ny);
  for (int j = 0; j < ny; ++j) {
    double v = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gy.nodes[j];
    double wv = 0.5 * (hi - lo) * gy.weights[j];
    Row r;
    // inverted: v = 1/y, dy/y^2 = dv
    r.y = inverted ? 1.0 / v : v;
    double wy = inverted ? wv : wv / (v * v);
    for (std::size_t k = 0; k < gx.nodes.size(); ++k) {
      r.xs.push_back(0.5 * gx.nodes[k]);
      r.wx.push_back(0.5 * gx.weights[k] * wy);
    }
    rows.push_back(std::move(r));
  }
}

std::vector<Row> build_rows(int level, double y_cap) {
  const int scale = 1 << level;
  const GaussRule& gx = gauss_legendre(24 * scale);
  std::vector<Row> rows;
  if (std::isinf(y_cap)) {
    for (int p = 0; p < 4; ++p) append_panel_rows(rows, p / 4.0, (p + 1) / 4.0, 8 * scale, gx, true);
  } else {
    for (double lo = 1.0; lo < y_cap; lo += 1.0)
      append_panel_rows(rows, lo, std::min(lo + 1.0, y_cap), 8 * scale, gx, false);
  }
  // Below y = 1: u = sqrt(1 - y^2) in [0, 1/2], x in [-1/2, -u] and [u, 1/2].
  const GaussRule& gu = gauss_legendre(8 * scale);
  const GaussRule& gs = gauss_legendre(8 * scale);
  for (std::size_t j = 0; j < gu.nodes.size(); ++j) {
    double u = 0.25 + 0.25 * gu.nodes[j];
    double y = std::sqrt(1.0 - u * u);
    double wy = 0.25 * gu.weights[j] * (u / y) / (y * y);
    Row r;
    r.y = y;
    double half = 0.5 * (0.5 - u), mid = 0.5 * (0.5 + u);
    for (std::size_t k = 0; k < gs.nodes.size(); ++k) {
      r.xs.push_back(-mid - half * gs.nodes[k]);
      r.wx.push_back(half * gs.weights[k] * wy);
    }
    for (std::size_t k = 0; k < gs.nodes.size(); ++k) {
      r.xs.push_back(mid + half * gs.nodes[k]);
      r.wx.push_back(half * gs.weights[k] * wy);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

cplx integrate_level(const RowIntegrand& f, int level, double y_cap, int threads, long& points, double& mass) {
  std::vector<Row> rows = build_rows(level, y_cap);
  std::vector<cplx> sums(rows.size());
  std::vector<double> masses(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const Row& r = rows[i];
    std::vector<cplx> out(r.xs.size());
    f(r.y, r.xs, out);
    CompensatedComplexSum acc;
    double m = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      acc.add(r.wx[k] * out[k]);
      m += std::abs(r.wx[k] * out[k]);
    }
    sums[i] = acc.value();
    masses[i] = m;
  });
  for (const Row& r : rows) points += static_cast<long>(r.xs.size());
  mass = compensated_sum(std::span<const double>(masses));
  return compensated_sum(std::span<const cplx>(sums));
}

}  // namespace

TripleProductResult fundamental_domain_integral(const RowIntegrand& f, const QuadratureSpec& spec, double y_cap,
                                                int threads) {
  spec.validate();
  if (!(y_cap > 1.0)) throw DomainError("fundamental_domain_integral: y_cap must exceed 1");
  TripleProductResult res;
  const int max_level = std::min(spec.max_levels, 5);
  double mass = 0.0;
  cplx prev = integrate_level(f, 0, y_cap, threads, res.points_used, mass);
  for (int level = 1; level <= max_level; ++level) {
    cplx cur = integrate_level(f, level, y_cap, threads, res.points_used, mass);
    res.value = cur;
    // floor: integrand values carry the special-function tolerance
    const double diff = std::abs(cur - prev), floor = kIntegrandRelErr * mass;
    res.quadrature_err = diff + floor;
    if (diff <= std::max({spec.abs_tol, spec.rel_tol * std::abs(cur), floor})) return res;
    prev = cur;
  }
  res.converged = false;
  return res;
}

TripleProductResult fundamental_domain_integral(const std::function<cplx(double, double)>& f,
                                                const QuadratureSpec& spec, double y_cap, int threads) {
  RowIntegrand row = [&f](double y, std::span<const double> xs, std::span<cplx> out) {
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = f(xs[k], y);
  };
  return fundamental_domain_integral(row, spec, y_cap, threads);
}

TripleProductResult triple_product(const MaassForm& form, cplx s1, cplx s2, const QuadratureSpec& spec,
                                   int threads) {
  if (std::abs(s1.imag()) > 8.0 || std::abs(s2.imag()) > 8.0)
    throw DomainError("triple_product: requires |Im s1|, |Im s2| <= 8");
  constexpr double y_cap = 12.0;
  RowIntegrand row = [&](double y, std::span<const double> xs, std::span<cplx> out) {
    MaassRow phi = maass_row(form, y, maass_terms(form, y));
    EisensteinRow e1 = eisenstein_row(s1, y, eisenstein_terms(s1, y));
    EisensteinRow e2 = eisenstein_row(s2, y, eisenstein_terms(s2, y));
    for (std::size_t k = 0; k < xs.size(); ++k) out[k] = eval_maass(phi, xs[k]) * eval_cos(e1, xs[k]) * eval_cos(e2, xs[k]);
  };
  TripleProductResult res = fundamental_domain_integral(row, spec, y_cap, threads);
  // Beyond y_cap: |phi| <= rho sqrt(y) sum |lambda(m)| |K(2 pi m y)| decays like e^{-2 pi y}.
  const double rho = std::sqrt(form.rho1_sq());
  const double kc = std::abs(bessel_k(cplx(0.0, form.spectral_param()), 2.0 * kPi * y_cap));
  const double growth = std::pow(y_cap, std::max(s1.real(), 1.0 - s1.real()) + std::max(s2.real(), 1.0 - s2.real()));
  const double tail = 4.0 * rho * std::sqrt(y_cap) * kc * 4.0 * growth / (2.0 * kPi * y_cap * y_cap);
  res.quadrature_err += tail;
  return res;
}

}  // namespace evlab
