#include "evlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/parallel.hpp"
#include "evlab/summation.hpp"
#include "evlab/wimu.hpp"

namespace evlab {

const char* to_string(MomentKind k) {
  switch (k) {
    case MomentKind::mean_value: return "mean_value";
    case MomentKind::osc_first_moment: return "osc_first_moment";
    case MomentKind::second_moment: return "second_moment";
    case MomentKind::weighted_variance: return "weighted_variance";
    case MomentKind::cross_variance: return "cross_variance";
  }
  return "?";
}

namespace {

constexpr cplx I(0.0, 1.0);

using MultiFn = std::function<void(double, std::span<cplx>)>;

struct MultiIntegral {
  std::vector<cplx> value;
  std::vector<double> err;
  double step = 0.0;
  long samples = 0;
};

// Simpson with stride 1 or 2 over samples f[k][c], k = 0..N.
cplx simpson(const std::vector<cplx>& f, std::size_t comps, std::size_t c, std::size_t N, std::size_t stride,
             double h) {
  CompensatedComplexSum acc;
  for (std::size_t k = 0, j = 0; k <= N; k += stride, ++j) {
    double w = (k == 0 || k == N) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    acc.add(w * f[k * comps + c]);
  }
  return acc.value() * (h * stride / 3.0);
}

MultiIntegral integrate_multi(const MultiFn& fn, std::size_t comps, double a, double b, double h_max, double rel,
                              int max_halvings, int threads) {
  if (!(b > a) || !(h_max > 0.0)) throw DomainError("integrate_window: empty window or nonpositive step");
  std::size_t N = 4 * static_cast<std::size_t>(std::ceil((b - a) / (4.0 * h_max)));
  N = std::max<std::size_t>(N, 4);
  std::vector<cplx> f((N + 1) * comps);
  parallel_for(N + 1, threads, [&](std::size_t k) {
    fn(a + (b - a) * double(k) / double(N), std::span<cplx>(f.data() + k * comps, comps));
  });
  for (int level = 0;; ++level) {
    const double h = (b - a) / double(N);
    MultiIntegral r;
    r.step = h;
    r.samples = static_cast<long>(N + 1);
    bool ok = true;
    for (std::size_t c = 0; c < comps; ++c) {
      cplx fine = simpson(f, comps, c, N, 1, h), coarse = simpson(f, comps, c, N, 2, h);
      double diff = std::abs(fine - coarse);
      r.value.push_back(fine);
      r.err.push_back(diff / 15.0 + 1e-15 * std::abs(fine));
      if (diff > rel * std::abs(fine)) ok = false;
    }
    if (ok) return r;
    if (level >= max_halvings) {
      std::ostringstream os;
      os << "grid did not stabilize on [" << a << ", " << b << "] after " << max_halvings
         << " halvings (step " << h << ")";
      throw BudgetExceeded(os.str());
    }
    // Refine: keep old samples at even indices.
    std::size_t M = 2 * N;
    std::vector<cplx> g((M + 1) * comps);
    for (std::size_t k = 0; k <= N; ++k)
      for (std::size_t c = 0; c < comps; ++c) g[2 * k * comps + c] = f[k * comps + c];
    parallel_for(N, threads, [&](std::size_t k) {
      std::size_t idx = 2 * k + 1;
      fn(a + (b - a) * double(idx) / double(M), std::span<cplx>(g.data() + idx * comps, comps));
    });
    f.swap(g);
    N = M;
  }
}

void check_T(double T, double min_T, const char* who) {
  if (!(T >= min_T)) {
    std::ostringstream os;
    os << who << ": requires T >= " << min_T;
    throw DomainError(os.str());
  }
}

double cap_step(const MomentOptions& opt, double rule) {
  return opt.grid_step > 0.0 ? std::min(opt.grid_step, rule) : rule;
}

}  // namespace

WindowIntegral integrate_window(const std::function<cplx(double)>& f, double a, double b, double h_max, double rel,
                                int max_halvings, int threads) {
  MultiIntegral m = integrate_multi([&](double t, std::span<cplx> out) { out[0] = f(t); }, 1, a, b, h_max, rel,
                                    max_halvings, threads);
  return {m.value[0], m.err[0], m.step, m.samples};
}

MomentReport mean_value(const MaassForm& form, int n, double T, cplx a_n, const MomentOptions& opt) {
  check_T(T, 20.0, "mean_value");
  MuEvaluator ev(form, n, a_n);
  const double b = opt.window_ratio * T;
  const double h = cap_step(opt, opt.c_grid / (n * std::log(b)));
  MultiIntegral m = integrate_multi([&](double t, std::span<cplx> out) {
    cplx mu = ev.completed(t).value;
    out[0] = mu;
    out[1] = std::abs(mu);
  }, 2, T, b, h, opt.converge_rel, opt.max_halvings, opt.threads);
  MomentReport r;
  r.kind = MomentKind::mean_value;
  r.n = n;
  r.T = T;
  r.integral = m.value[0] / T;
  r.predicted = std::pow(T, -(n - 1) / 2.0) * std::sqrt(std::log(T));
  r.ratio = r.integral / r.predicted;
  r.grid_step = m.step;
  r.samples = m.samples;
  r.err_estimate = m.err[0] / T;
  r.diagnostics["abs_mean"] = m.value[1].real() / T;
  return r;
}

cplx osc_integrand(const MaassForm& form, int n, double t) {
  const cplx L = l_value(form, cplx(0.5, -n * t)).value;
  const double z = std::abs(riemann_zeta(cplx(n / 2.0, n * t)));
  const double phase = -n * t * std::log(n * t / (2.0 * std::exp(1.0) * kPi));
  return std::exp(I * phase) * L / (z * z) * std::pow(t, -(n - 1) / 2.0);
}

MomentReport osc_first_moment(const MaassForm& form, int n, double T, cplx a_n, const MomentOptions& opt) {
  check_T(T, 20.0, "osc_first_moment");
  MuEvaluator ev(form, n, a_n);
  const double b = opt.window_ratio * T;
  const double h = cap_step(opt, opt.c_grid / (n * std::log(b)));
  MultiIntegral m = integrate_multi([&](double t, std::span<cplx> out) {
    out[0] = osc_integrand(form, n, t);
    out[1] = ev.completed(t).value;
  }, 2, T, b, h, opt.converge_rel, opt.max_halvings, opt.threads);

  // Stirling: mu_{n,t} = P e^{-int log(nt/2e pi)} L/|zeta|^2 t^{-(n-1)/2} (1 + O(1/t))
  cplx P = 0.0;
  if (!ev.vanishes())
    P = a_n * ev.rho1() / 4.0 * std::pow(kPi, n - 2.0) * std::pow(2.0 / n, (n - 1) / 2.0) *
        std::exp(I * (kPi / 4.0)) * ev.gamma_special_sq() * ev.l_special().real();
  MomentReport r;
  r.kind = MomentKind::osc_first_moment;
  r.n = n;
  r.T = T;
  r.integral = m.value[0];
  r.predicted = P;
  r.ratio = P * m.value[0] / T;
  r.grid_step = m.step;
  r.samples = m.samples;
  r.err_estimate = m.err[0];
  const cplx mean = m.value[1] / T;
  const double residual = std::abs(mean - r.ratio);
  const double bound = opt.decomposition_C * std::abs(P) * std::pow(T, -(n + 1) / 2.0) * std::sqrt(std::log(T));
  r.diagnostics["mean_value_re"] = mean.real();
  r.diagnostics["mean_value_im"] = mean.imag();
  r.diagnostics["decomposition_residual"] = residual;
  r.diagnostics["decomposition_bound"] = bound;
  r.diagnostics["decomposition_ok"] = residual <= bound ? 1.0 : 0.0;
  return r;
}

double jutila_coefficient(const MaassForm& form) {
  const double lam = completed_adjoint_l(form, 1.0).value.real();
  return 12.0 / (kPi * kPi) * lam * std::cosh(kPi * form.spectral_param());
}

double jutila_prediction(const MaassForm& form, double T, double B) {
  return jutila_coefficient(form) * T * (std::log(T) + B);
}

MomentReport second_moment(const MaassForm& form, double T, const MomentOptions& opt) {
  check_T(T, 50.0, "second_moment");
  const double b = opt.window_ratio * T;
  const double h = cap_step(opt, opt.step_scale);
  MultiIntegral m = integrate_multi([&](double t, std::span<cplx> out) {
    out[0] = std::norm(l_value(form, cplx(0.5, t)).value);
  }, 1, T, b, h, opt.converge_rel, opt.max_halvings, opt.threads);
  MomentReport r;
  r.kind = MomentKind::second_moment;
  r.n = 1;
  r.T = T;
  r.integral = m.value[0].real();
  r.predicted = jutila_prediction(form, T, 0.0);
  r.ratio = r.integral / r.predicted;
  r.grid_step = m.step;
  r.samples = m.samples;
  r.err_estimate = m.err[0];
  r.diagnostics["jutila_coefficient"] = jutila_coefficient(form);
  return r;
}

VarianceConstants variance_constants(const MaassForm& form, int n, cplx a_n) {
  VarianceConstants c;
  if (!form.is_even()) return c;
  MuEvaluator ev(form, n, a_n);
  const double tp = form.spectral_param();
  const double a2 = std::norm(a_n), ln = std::log(double(n)), base = std::pow(2.0 * kPi / n, n - 1);
  const double lam = ev.completed_special(), L = ev.l_special().real();
  c.log_form = 6.0 * ln / (kPi * kPi) * a2 * base * std::cosh(kPi * tp) * lam * lam;
  const double g4 = std::exp(4.0 * log_gamma(cplx((3.0 - n) / 4.0, tp / 2.0)).real());
  const double gh = std::exp(2.0 * log_gamma(cplx(0.5, tp)).real());
  c.v_n = g4 / (2.0 * std::pow(kPi, 3.0 - n) * gh);
  c.vn_form = 12.0 * a2 * ln / kPi * base * L * L * c.v_n;
  return c;
}

MomentReport weighted_variance(const MaassForm& form, int n, double T, cplx a_n, const MomentOptions& opt) {
  check_T(T, 50.0, "weighted_variance");
  MuEvaluator ev(form, n, a_n);
  const double b = opt.window_ratio * T;
  const double h = cap_step(opt, opt.step_scale / n);
  MultiIntegral m = integrate_multi([&](double t, std::span<cplx> out) {
    auto sq = ev.squares(t);
    out[0] = sq.zeta_weighted;
    out[1] = sq.mu_sq;
  }, 2, T, b, h, opt.converge_rel, opt.max_halvings, opt.threads);
  const double scale = std::pow(T, n - 2.0) / std::log(T);
  const VarianceConstants c = variance_constants(form, n, a_n);
  MomentReport r;
  r.kind = MomentKind::weighted_variance;
  r.n = n;
  r.T = T;
  r.integral = scale * m.value[0].real();
  r.predicted = c.log_form;
  r.ratio = c.log_form != 0.0 ? r.integral / r.predicted : cplx(0.0);
  r.grid_step = m.step;
  r.samples = m.samples;
  r.err_estimate = scale * m.err[0];
  r.diagnostics["predicted_vn_form"] = c.vn_form;
  r.diagnostics["constants_rel_gap"] = c.log_form != 0.0 ? std::abs(c.vn_form - c.log_form) / c.log_form : 0.0;
  r.diagnostics["unweighted_integral"] = scale * m.value[1].real();
  r.diagnostics["limit_ratio_from_jutila"] = (1.0 - std::pow(2.0, 2.0 - n)) / ((n - 2.0) * std::log(double(n)));
  return r;
}

MomentReport cross_variance(const MaassForm& phi, const MaassForm& psi, int n, double T, cplx a_n,
                            const MomentOptions& opt) {
  check_T(T, 50.0, "cross_variance");
  MuEvaluator ea(phi, n, a_n), eb(psi, n, a_n);
  const bool same = &phi == &psi;
  const double b = opt.window_ratio * T;
  const double h = cap_step(opt, opt.step_scale / n);
  MultiIntegral m = integrate_multi([&](double t, std::span<cplx> out) {
    cplx u = ea.completed(t).value;
    cplx v = same ? u : eb.completed(t).value;
    out[0] = u * std::conj(v);
    out[1] = std::norm(u);
    out[2] = std::norm(v);
  }, 3, T, b, h, opt.converge_rel, opt.max_halvings, opt.threads);
  const double scale = std::pow(T, n - 2.0) / std::log(T);
  MomentReport r;
  r.kind = MomentKind::cross_variance;
  r.n = n;
  r.T = T;
  r.integral = scale * m.value[0];
  r.predicted = 0.0;
  const double da = scale * m.value[1].real(), db = scale * m.value[2].real();
  r.ratio = (da > 0.0 && db > 0.0) ? std::abs(r.integral) / std::sqrt(da * db) : 0.0;
  r.grid_step = m.step;
  r.samples = m.samples;
  r.err_estimate = scale * m.err[0];
  r.diagnostics["diag_phi"] = da;
  r.diagnostics["diag_psi"] = db;
  return r;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  if (k < 2 || y.size() != k) throw DomainError("fit_line: needs at least two paired points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < k; ++i) mx += x[i], my += y[i];
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  if (sxx == 0.0) throw DomainError("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (k > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < k; ++i) {
      double e = y[i] - f.intercept - f.slope * x[i];
      rss += e * e;
    }
    f.slope_se = std::sqrt(rss / double(k - 2) / sxx);
    boost::math::students_t dist(double(k - 2));
    f.slope_ci95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * f.slope_se;
  } else {
    f.slope_se = f.slope_ci95 = std::numeric_limits<double>::infinity();
  }
  return f;
}

JutilaFit fit_jutila(const MaassForm& form, const std::vector<MomentReport>& windows) {
  std::vector<double> x, y;
  for (const auto& w : windows) {
    x.push_back(std::log(w.T));
    y.push_back(w.integral.real() / w.T);
  }
  LineFit f = fit_line(x, y);
  JutilaFit j;
  j.coefficient = f.slope;
  j.B = f.intercept / f.slope;
  j.predicted = jutila_coefficient(form);
  j.relative_gap = std::abs(j.coefficient - j.predicted) / j.predicted;
  return j;
}

}  // namespace evlab
