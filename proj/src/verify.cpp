#include "evlab/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>

#include "evlab/eisen2.hpp"
#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/moments.hpp"
#include "evlab/specfun.hpp"
#include "evlab/summation.hpp"
#include "evlab/wimu.hpp"

namespace evlab {

namespace {

constexpr cplx I(0.0, 1.0);

double rel(cplx a, cplx b) {
  const double d = std::abs(a - b), m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? d : d / m;
}

struct Suite {
  std::vector<CheckResult> out;

  void add(const std::string& name, double tol, const std::function<double()>& f) {
    CheckResult r;
    r.name = name;
    r.tolerance = tol;
    try {
      r.measured = f();
      r.passed = r.measured <= tol;
    } catch (const std::exception& e) {
      r.measured = std::numeric_limits<double>::infinity();
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }

  void skip(const std::string& name, const std::string& why) {
    CheckResult r;
    r.name = name;
    r.passed = true;
    r.detail = "skipped: " + why;
    out.push_back(std::move(r));
  }
};

void specfun_checks(Suite& S) {
  S.add("gamma_recurrence", 1e-12, [] {
    double worst = 0;
    for (cplx z : {cplx(0.3, 0.2), cplx(2.5, -7.0), cplx(-3.7, 1.1), cplx(11.0, 40.0)})
      worst = std::max(worst, rel(gamma(z + 1.0), z * gamma(z)));
    return worst;
  });
  S.add("gamma_reflection", 1e-12, [] {
    double worst = 0;
    for (cplx z : {cplx(0.25, 0.0), cplx(0.3, 2.0), cplx(-1.6, 0.7), cplx(0.5, 9.0)})
      worst = std::max(worst, rel(gamma(z) * gamma(1.0 - z), kPi / std::sin(kPi * z)));
    return worst;
  });
  S.add("gamma_half", 1e-14, [] { return rel(gamma(0.5), std::sqrt(kPi)); });
  S.add("log_gamma_ratio", 1e-12, [] {
    double worst = 0;
    for (cplx w : {cplx(3.0, 100.0), cplx(0.25, -800.0), cplx(5.0, 2.0)})
      for (cplx d : {cplx(0.5, 0.0), cplx(0.0, 3.0)})
        worst = std::max(worst, std::abs(std::exp(log_gamma_ratio(w, d) - log_gamma(w + d) + log_gamma(w)) - 1.0));
    return worst;
  });
  S.add("zeta_special_values", 1e-13, [] {
    return std::max({rel(riemann_zeta(2.0), kPi * kPi / 6.0), rel(riemann_zeta(4.0), std::pow(kPi, 4) / 90.0),
                     rel(riemann_zeta(0.5), -1.4603545088095868)});
  });
  S.add("zeta_pole_guard", 0.0, [] {
    try {
      riemann_zeta(1.0);
    } catch (const PoleError&) {
      return 0.0;
    }
    return 1.0;
  });
  S.add("zeta_functional_equation", 1e-9, [] {
    double worst = 0;
    for (int k = 0; k < 50; ++k) {
      cplx s(0.05 + 0.9 * ((k * 7) % 50) / 49.0, 1.0 + 3.0 * k);
      worst = std::max(worst, rel(completed_zeta(s), completed_zeta(1.0 - s)));
    }
    return worst;
  });
  S.add("zeta_first_zero", 1e-9, [] { return std::abs(riemann_zeta(cplx(0.5, 14.134725141734693))); });
  S.add("bessel_half_closed_form", 1e-10, [] {
    double worst = 0;
    for (double x : {0.01, 0.7, 3.0, 25.0})
      worst = std::max(worst, rel(bessel_k(0.5, x), std::sqrt(kPi / (2 * x)) * std::exp(-x)));
    return worst;
  });
  S.add("bessel_imaginary_order_real", 1e-12, [] {
    double worst = 0;
    for (double mu : {1.0, 13.78, 40.0})
      for (double x : {0.5, 5.0, 30.0}) {
        cplx k = bessel_k(cplx(0, mu), x);
        worst = std::max(worst, std::abs(k.imag()) / std::max(std::abs(k), 1e-300));
      }
    return worst;
  });
  S.add("bessel_recurrence", 1e-10, [] {
    double worst = 0;
    for (cplx nu : {cplx(0.3, 2.0), cplx(0.0, 9.5), cplx(1.25, -0.5)})
      for (double x : {0.4, 2.0, 12.0}) {
        cplx lhs = bessel_k(nu - 1.0, x) - bessel_k(nu + 1.0, x), rhs = -2.0 * nu / x * bessel_k(nu, x);
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(bessel_k(nu + 1.0, x)));
      }
    return worst;
  });
}

void maass_checks(Suite& S, const MaassForm& f, const std::string& tag) {
  S.add("hecke_multiplicativity[" + tag + "]", 1e-12, [&f] {
    double worst = 0;
    for (long m = 2; m < 60; ++m)
      for (long k = 2; k < 60; ++k)
        if (std::gcd(m, k) == 1) worst = std::max(worst, std::abs(f.lambda(m * k) - f.lambda(m) * f.lambda(k)));
    return worst;
  });
  S.add("hecke_prime_power[" + tag + "]", 1e-12, [&f] {
    double worst = 0;
    for (long p : {2L, 3L, 5L, 7L, 11L})
      for (long q = p; q * p * p <= 100000; q *= p)
        worst = std::max(worst, std::abs(f.lambda(p) * f.lambda(q) - f.lambda(q * p) - f.lambda(q / p)));
    return worst;
  });
  S.add("automorphy_inversion[" + tag + "]", 1e-9, [&f] {
    double worst = 0, scale = 0;
    for (UpperHalfPoint z : {UpperHalfPoint{0.13, 0.81}, UpperHalfPoint{-0.31, 0.62}, UpperHalfPoint{0.4, 0.95}}) {
      const double r2 = z.x * z.x + z.y * z.y;
      UpperHalfPoint w{-z.x / r2, z.y / r2};
      double a = maass_value(f, z, maass_terms(f, z.y)), b = maass_value(f, w, maass_terms(f, w.y));
      worst = std::max(worst, std::abs(a - b));
      scale = std::max(scale, std::abs(a));
    }
    return worst / scale;
  });
  S.add("rho1_adjoint_consistency[" + tag + "]", 1e-12, [&f] {
    return std::abs(f.rho1_sq() * completed_adjoint_l(f, 1.0).value.real() / 8.0 - 1.0);
  });
  S.add("adjoint_l1_two_methods[" + tag + "]", 2e-4, [&f] {
    return std::abs(adjoint_l_at_1_smoothed(f, 2500.0).value / adjoint_l_at_1(f).value - 1.0);
  });
  S.add("l_functional_equation[" + tag + "]", 1e-9, [&f] {
    double worst = 0;
    const int eps = root_number(f);
    for (cplx s : {cplx(0.3, 2.5), cplx(0.1, 11.0), cplx(0.75, 30.0)})
      worst = std::max(worst, rel(completed_l(f, s).value, double(eps) * completed_l(f, 1.0 - s).value));
    return worst;
  });
  S.add("l_dirichlet_vs_afe[" + tag + "]", 1e-8, [&f] {
    double worst = 0;
    for (cplx s : {cplx(1.5, 3.0), cplx(2.0, 20.0)})
      worst = std::max(worst, rel(l_dirichlet(f, s).value, afe_smoothed(f, s).value));
    return worst;
  });
  S.add("dual_afe_central[" + tag + "]", 1e-9, [&f] {
    SmoothedAfeOptions alt;
    alt.gauss = 0.02;
    alt.contour = 0.9;
    alt.step = 0.08;
    double worst = 0;
    for (double t : {5.0, 40.0, 150.0}) {
      cplx s(0.5, t);
      worst = std::max(worst, std::abs(afe_smoothed(f, s).value - afe_smoothed(f, s, alt).value) /
                                  std::max(1.0, std::abs(afe_smoothed(f, s).value)));
    }
    return worst;
  });
  S.add("adjoint_afe_vs_dirichlet[" + tag + "]", 1e-8, [&f] {
    const long N = f.table_limit();
    const auto b = adjoint_coefficients(f, N);
    double worst = 0;
    for (cplx s : {cplx(3.0, 0.0), cplx(3.0, 5.0)}) {
      CompensatedComplexSum acc;
      for (long m = N; m >= 1; --m) acc.add(b[m] * std::exp(-s * std::log(double(m))));
      worst = std::max(worst, rel(acc.value(), adjoint_l(f, s).value));
    }
    return worst;
  });
}

void eisenstein_checks(Suite& S, const MaassForm& f, const QuadratureSpec& spec, int threads) {
  S.add("eisenstein_inversion", 1e-11, [] {
    const cplx s(0.5, 6.0);
    UpperHalfPoint z{0.21, 0.87};
    const double r2 = z.x * z.x + z.y * z.y;
    UpperHalfPoint w{-z.x / r2, z.y / r2};
    return rel(eisenstein_value(s, z, eisenstein_terms(s, z.y)), eisenstein_value(s, w, eisenstein_terms(s, w.y)));
  });
  S.add("eisenstein_lattice_sum", 1e-9, [] {
    const double s = 4.0;
    const UpperHalfPoint z{0.17, 1.3};
    CompensatedSum acc;
    const int N = 300;
    for (int c = -N; c <= N; ++c)
      for (int d = -N; d <= N; ++d)
        if (std::gcd(c, d) == 1) acc.add(std::pow(z.y, s) / std::pow((c * z.x + d) * (c * z.x + d) + c * c * z.y * z.y, s));
    return rel(0.5 * acc.value(), eisenstein_value(s, z, eisenstein_terms(s, z.y)));
  });
  S.add("bessel_moment_closed_form", 1e-9, [&f] {
    double worst = 0;
    for (cplx nu : {cplx(-0.25, 0.5), cplx(-0.5, 2.0)})
      worst = std::max(worst, rel(bessel_moment(f.spectral_param(), nu, 2.0),
                                  bessel_moment_closed(f.spectral_param(), nu, 2.0)));
    return worst;
  });
  S.add("unfolding_n3_t1_s2", 1e-4, [&f] { return rel(i_series(f, 3, 1.0, 2.0), i_closed(f, 3, 1.0, 2.0)); });
  S.add("unfolding_n4_t0.5_s2.5", 1e-4, [&f] { return rel(i_series(f, 4, 0.5, 2.5), i_closed(f, 4, 0.5, 2.5)); });
  S.add("unfolding_n5_t2_s2", 1e-4, [&f] { return rel(i_series(f, 5, 2.0, 2.0), i_closed(f, 5, 2.0, 2.0)); });
  S.add("fundamental_domain_volume", 1e-10, [&spec, threads] {
    auto r = fundamental_domain_integral([](double, double) { return cplx(1.0); }, spec,
                                         std::numeric_limits<double>::infinity(), threads);
    return std::abs(r.value.real() - kPi / 3.0);
  });
}

void mu_checks(Suite& S, const MaassForm& f) {
  S.add("mu_dual_path", 1e-9, [&f] {
    double worst = 0;
    for (int n : {3, 4, 5, 6}) {
      MuEvaluator ev(f, n);
      for (double t : {2.0, 7.5, 31.0, 120.0}) {
        cplx a = ev.completed(t).value;
        worst = std::max(worst, rel(a, ev.gamma_form(t).value));
      }
    }
    return worst;
  });
  S.add("mu_adjoint_round_trip", 1e-9, [&f] {
    double worst = 0;
    for (int n : {3, 4, 5}) {
      MuEvaluator ev(f, n, cplx(0.6, -0.8));
      for (double t : {3.0, 17.0, 90.0}) worst = std::max(worst, rel(ev.squared(t), std::norm(ev.completed(t).value)));
    }
    return worst;
  });
  S.add("mu_a_n_linearity", 1e-13, [&f] {
    const cplx a(2.0, 1.5);
    return rel(mu_completed(f, 3, 10.0, a).value, a * mu_completed(f, 3, 10.0).value);
  });
  S.add("stirling_envelope", 5.0, [&f] {
    double worst = 0;
    for (int n : {3, 4, 5})
      for (double t = 50.0; t <= 500.0; t *= 2.0)
        worst = std::max(worst, t * std::abs(gamma_factor_sq(f, n, t) / stirling_gamma_sq(n, t) - 1.0));
    return worst;
  });
  S.add("variance_constants_agree", 1e-9, [&f] {
    double worst = 0;
    for (int n : {3, 4, 5}) {
      VarianceConstants c = variance_constants(f, n);
      worst = std::max(worst, std::abs(c.vn_form / c.log_form - 1.0));
    }
    return worst;
  });
  S.add("window_additivity", 1e-9, [] {
    auto g = [](double t) { return std::exp(I * 3.0 * t * std::log(t)) / t; };
    auto w = integrate_window(g, 50.0, 100.0, 0.005, 1e-6, 4, 1);
    auto a = integrate_window(g, 50.0, 75.0, 0.005, 1e-6, 4, 1);
    auto b = integrate_window(g, 75.0, 100.0, 0.005, 1e-6, 4, 1);
    return std::abs(w.value - a.value - b.value) / std::abs(w.value);
  });
}

void parity_checks(Suite& S, const MaassForm& odd) {
  S.add("odd_mu_zero", 0.0, [&odd] {
    double worst = 0;
    for (int n : {3, 4})
      for (double t : {2.5, 40.0}) {
        worst = std::max(worst, std::abs(mu_completed(odd, n, t).value));
        worst = std::max(worst, std::abs(mu_gamma_form(odd, n, t).value));
        worst = std::max(worst, mu_squared(odd, n, t));
      }
    return worst;
  });
  S.add("odd_moments_zero", 0.0, [&odd] {
    MomentOptions o;
    o.grid_step = 0.5;
    return std::abs(mean_value(odd, 3, 20.0, 1.0, o).integral) + std::abs(weighted_variance(odd, 3, 50.0, 1.0, o).integral) +
           std::abs(cross_variance(odd, odd, 3, 50.0, 1.0, o).integral);
  });
  S.add("odd_unfolding_guard", 0.0, [&odd] {
    try {
      i_closed(odd, 3, 1.0, 2.0);
    } catch (const DomainError&) {
      return 0.0;
    }
    return 1.0;
  });
  S.add("odd_automorphy_inversion", 1e-9, [&odd] {
    UpperHalfPoint z{0.13, 0.81};
    const double r2 = z.x * z.x + z.y * z.y;
    UpperHalfPoint w{-z.x / r2, z.y / r2};
    double a = maass_value(odd, z, maass_terms(odd, z.y)), b = maass_value(odd, w, maass_terms(odd, w.y));
    return std::abs(a - b) / std::abs(a);
  });
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::vector<MaassForm>& forms, const QuadratureSpec& spec,
                                          int threads) {
  spec.validate();
  Suite S;
  specfun_checks(S);
  const MaassForm* even = nullptr;
  const MaassForm* odd = nullptr;
  for (const auto& f : forms) {
    if (f.is_even() && !even) even = &f;
    if (!f.is_even() && !odd) odd = &f;
  }
  for (const auto& f : forms) {
    char tag[64];
    std::snprintf(tag, sizeof tag, "%s%.4f", f.is_even() ? "even" : "odd", f.spectral_param());
    maass_checks(S, f, tag);
  }
  if (even) {
    eisenstein_checks(S, *even, spec, threads);
    mu_checks(S, *even);
  } else {
    S.skip("eisenstein_and_mu_checks", "no even form supplied");
  }
  if (odd)
    parity_checks(S, *odd);
  else
    S.skip("parity_checks", "no odd form supplied");
  return S.out;
}

std::string format_report(const std::vector<CheckResult>& checks) {
  std::string s;
  int failed = 0;
  char buf[512];
  for (const auto& c : checks) {
    if (!c.passed) ++failed;
    std::snprintf(buf, sizeof buf, "%s %-40s measured=%.3e tol=%.1e%s%s\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.tolerance, c.detail.empty() ? "" : "  ", c.detail.c_str());
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "%zu checks, %d failed\n", checks.size(), failed);
  s += buf;
  return s;
}

}  // namespace evlab
