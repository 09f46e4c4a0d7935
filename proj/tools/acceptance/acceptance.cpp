// Acceptance gate: one PASS/FAIL line per criterion.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "evlab/eisen2.hpp"
#include "evlab/errors.hpp"
#include "evlab/moments.hpp"
#include "evlab/parallel.hpp"
#include "evlab/specfun.hpp"
#include "evlab/wimu.hpp"

#ifndef EVLAB_DATA_DIR
#define EVLAB_DATA_DIR "data"
#endif

using namespace evlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

double rel(cplx a, cplx b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

const MaassForm& even() {
  static const MaassForm f = load_maass_form(std::string(EVLAB_DATA_DIR) + "/maass_even_13.78.txt");
  return f;
}
const MaassForm& odd() {
  static const MaassForm f = load_maass_form(std::string(EVLAB_DATA_DIR) + "/maass_odd_9.53.txt");
  return f;
}

int g_threads = 1;

Outcome c1_specfun() {
  double rec = 0, refl = 0, fe = 0, half = 0, real = 0;
  for (cplx z : {cplx(0.3, 0.2), cplx(2.5, -7.0), cplx(-3.7, 1.1), cplx(11.0, 40.0), cplx(0.5, 120.0)}) {
    rec = std::max(rec, rel(gamma(z + 1.0), z * gamma(z)));
    if (std::abs(z) < 20) refl = std::max(refl, rel(gamma(z) * gamma(1.0 - z), kPi / std::sin(kPi * z)));
  }
  for (int k = 0; k < 50; ++k) {
    const cplx s(0.02 + 0.96 * ((k * 7) % 50) / 49.0, 0.5 + 2.9 * k);
    fe = std::max(fe, rel(completed_zeta(s), completed_zeta(1.0 - s)));
  }
  for (double x : {1e-4, 0.01, 0.3, 1.0, 2.7, 10.0, 60.0, 300.0})
    half = std::max(half, rel(bessel_k(0.5, x), std::sqrt(kPi / (2 * x)) * std::exp(-x)));
  for (double mu : {0.5, 9.53, 13.78, 40.0, 120.0})
    for (double x : {0.05, 0.8, 4.0, 30.0, 150.0}) {
      const cplx k = bessel_k(cplx(0.0, mu), x);
      if (std::abs(k) > 0) real = std::max(real, std::abs(k.imag()) / std::abs(k));
    }
  Outcome o;
  o.pass = rec <= 1e-12 && refl <= 1e-12 && fe <= 1e-9 && half <= 1e-10 && real <= 1e-12;
  o.detail = "recurrence " + fmt("%.1e", rec) + ", reflection " + fmt("%.1e", refl) + ", Lambda FE (50 pts) " +
             fmt("%.1e", fe) + ", K_1/2 " + fmt("%.1e", half) + ", Im K_imu " + fmt("%.1e", real);
  return o;
}

Outcome c2_unfolding() {
  double worst = 0;
  std::string where;
  for (int n : {3, 4, 5})
    for (double t : {0.5, 1.0, 2.0})
      for (double s : {2.0, 2.5}) {
        const double e = rel(i_series(even(), n, t, s), i_closed(even(), n, t, s));
        if (e > worst) {
          worst = e;
          where = "n=" + std::to_string(n) + " t=" + fmt("%g", t) + " s=" + fmt("%g", s);
        }
      }
  return {worst <= 1e-4, "max relative gap over 18 points " + fmt("%.2e", worst) + " at " + where};
}

Outcome c3_triple() {
  auto vol = fundamental_domain_integral([](double, double) { return cplx(1.0); }, {},
                                         std::numeric_limits<double>::infinity(), g_threads);
  const double ev = std::abs(vol.value.real() - kPi / 3.0);
  const int n = 3;
  const double t = 1.0;
  const cplx s1(1.0 - n / 4.0, n * t / 2.0), s2 = 2.0;
  auto tp = triple_product(even(), s1, s2, {}, g_threads);
  const cplx ic = i_closed(even(), n, t, s2);
  const double gap = std::abs(tp.value - ic);
  auto to = triple_product(odd(), s1, s2, {}, g_threads);
  Outcome o;
  o.pass = ev <= 1e-6 && tp.converged && gap <= std::max(tp.quadrature_err, 1e-12 * std::abs(ic)) &&
           std::abs(to.value) <= 1e-6;
  o.detail = "volume error " + fmt("%.1e", ev) + "; |quadrature - closed| " + fmt("%.2e", gap) + " vs error bar " +
             fmt("%.2e", tp.quadrature_err) + " (relative " + fmt("%.1e", gap / std::abs(ic)) + "); odd form " +
             fmt("%.1e", std::abs(to.value));
  return o;
}

Outcome c4_dual_path() {
  double dual = 0, sq = 0;
  int samples = 0;
  for (int n = 3; n <= 7; ++n) {
    MuEvaluator ev(even(), n, cplx(0.8, 0.6));
    for (int k = 0; k < 20; ++k) {
      const double t = 2.0 * std::pow(150.0, k / 19.0);  // 2 .. 300
      const cplx a = ev.completed(t).value;
      dual = std::max(dual, rel(a, ev.gamma_form(t).value));
      sq = std::max(sq, std::abs(ev.squared(t) / std::norm(a) - 1.0));
      ++samples;
    }
  }
  return {dual <= 1e-9 && sq <= 1e-9, std::to_string(samples) + " samples: completed vs Gamma form " +
                                          fmt("%.1e", dual) + ", |mu|^2 via L(1, ad) " + fmt("%.1e", sq)};
}

Outcome c5_stirling() {
  double worst = 0;
  bool trend = true;
  for (int n : {3, 4, 5}) {
    for (double t = 50.0; t <= 500.0; t += 0.5)
      worst = std::max(worst, t * std::abs(gamma_factor_sq(even(), n, t) / stirling_gamma_sq(n, t) - 1.0));
    double prev = std::numeric_limits<double>::infinity();
    for (double t = 50.0; t <= 800.0; t *= 2.0) {
      const double e = std::abs(gamma_factor_sq(even(), n, t) / stirling_gamma_sq(n, t) - 1.0);
      if (!(e < prev)) trend = false;
      prev = e;
    }
  }
  return {worst <= 5.0 && trend,
          "max t |ratio - 1| = " + fmt("%.3f", worst) + " (bound 5); dyadic decrease " + (trend ? "yes" : "no")};
}

MomentOptions moment_opts() {
  MomentOptions o;
  o.threads = g_threads;
  return o;
}

Outcome c6_jutila() {
  std::vector<MomentReport> w;
  for (double T : {100.0, 200.0, 400.0, 800.0}) w.push_back(second_moment(even(), T, moment_opts()));
  JutilaFit j = fit_jutila(even(), w);
  std::vector<double> x, y;
  for (const auto& r : w) {
    x.push_back(std::log(r.T));
    y.push_back(r.integral.real() / r.T);
  }
  LineFit f = fit_line(x, y);
  return {j.relative_gap <= 0.15, "fitted " + fmt("%.4f", j.coefficient) + " +- " + fmt("%.4f", f.slope_ci95) +
                                      " vs predicted " + fmt("%.4f", j.predicted) + " (gap " +
                                      fmt("%.1f", 100 * j.relative_gap) + "%), B = " + fmt("%.3f", j.B)};
}

Outcome c7_mean_value() {
  std::vector<double> x, y;
  std::string vals;
  for (double T : {50.0, 100.0, 200.0, 400.0}) {
    MomentReport r = mean_value(even(), 3, T, 1.0, moment_opts());
    x.push_back(std::log(T));
    y.push_back(std::log(std::abs(r.integral)));
    vals += fmt("%.3e ", std::abs(r.integral));
  }
  LineFit f = fit_line(x, y);
  return {f.slope <= -0.85, "slope " + fmt("%.3f", f.slope) + " +- " + fmt("%.3f", f.slope_ci95) +
                                " (need <= -0.85); |mean| = " + vals};
}

Outcome c8_variance() {
  VarianceConstants c = variance_constants(even(), 3);
  const double gap = std::abs(c.vn_form / c.log_form - 1.0);
  double r100 = 0, r400 = 0, r800 = 0;
  for (double T : {100.0, 400.0, 800.0}) {
    MomentReport r = weighted_variance(even(), 3, T, 1.0, moment_opts());
    (T == 100.0 ? r100 : T == 400.0 ? r400 : r800) = r.ratio.real();
  }
  const bool band = r400 >= 0.6 && r400 <= 1.5;
  const bool closer = std::abs(r800 - 1.0) < std::abs(r100 - 1.0);
  return {band && closer && gap <= 1e-9, "ratio T=100 " + fmt("%.4f", r100) + ", T=400 " + fmt("%.4f", r400) +
                                             " (band [0.6, 1.5]), T=800 " + fmt("%.4f", r800) + "; constants gap " +
                                             fmt("%.1e", gap)};
}

Outcome c9_parity() {
  double worst = 0;
  for (int n : {3, 4, 5})
    for (double t : {2.0, 15.0, 90.0}) {
      worst = std::max(worst, std::abs(mu_completed(odd(), n, t).value));
      worst = std::max(worst, std::abs(mu_gamma_form(odd(), n, t).value));
      worst = std::max(worst, mu_squared(odd(), n, t));
      MuEvaluator ev(odd(), n);
      worst = std::max(worst, ev.squares(t).zeta_weighted);
    }
  MomentOptions o = moment_opts();
  o.window_ratio = 1.25;
  worst = std::max(worst, std::abs(mean_value(odd(), 3, 50.0, 1.0, o).integral));
  MomentReport osc = osc_first_moment(odd(), 3, 50.0, 1.0, o);
  worst = std::max(worst, std::abs(osc.predicted) + std::abs(osc.ratio));
  worst = std::max(worst, std::abs(weighted_variance(odd(), 3, 50.0, 1.0, o).integral));
  worst = std::max(worst, std::abs(cross_variance(odd(), even(), 3, 50.0, 1.0, o).integral));
  worst = std::max(worst, std::abs(cross_variance(odd(), odd(), 3, 50.0, 1.0, o).integral));
  return {worst == 0.0, "largest odd-form output " + fmt("%.1e", worst) +
                            " over mu, |mu|^2, mean value, oscillatory prefactor, variance and cross variance"};
}

Outcome c10_determinism() {
  auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "evlab");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, log;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, log);
    return std::make_pair(code, out.str());
  };
  const std::vector<std::string> verify = {"verify"};
  const std::vector<std::string> scan = {"scan-mu", "--n", "3", "--tmin", "50", "--tmax", "60"};
  auto v1 = run(verify), v2 = run(verify);
  auto s1 = run(scan), s2 = run(scan);
  const bool same = v1.second == v2.second && s1.second == s2.second && !s1.second.empty();
  return {same && v1.first == 0 && s1.first == 0,
          std::string("verify ") + (v1.second == v2.second ? "identical" : "DIFFERS") + " (exit " +
              std::to_string(v1.first) + "), scan-mu " + (s1.second == s2.second ? "identical" : "DIFFERS") + " (" +
              std::to_string(s1.second.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evlab acceptance gate"};
  std::vector<int> only;
  app.add_option("--only", only, "criterion numbers to run")->delimiter(',');
  app.add_option("--threads", g_threads, "worker threads, 0 = all");
  CLI11_PARSE(app, argc, argv);
  g_threads = resolve_threads(g_threads);
  std::setvbuf(stdout, nullptr, _IONBF, 0);

  const std::vector<Criterion> all = {
      {1, "special-function suite", 10, c1_specfun},
      {2, "unfolding identity", 120, c2_unfolding},
      {3, "brute-force triple product", 600, c3_triple},
      {4, "dual-path mu identity", 60, c4_dual_path},
      {5, "Stirling envelope", 60, c5_stirling},
      {6, "Jutila constant", 1800, c6_jutila},
      {7, "mean-value trend (n = 3)", 1800, c7_mean_value},
      {8, "weighted variance constant (n = 3)", 1800, c8_variance},
      {9, "parity annihilation", 600, c9_parity},
      {10, "determinism", 600, c10_determinism},
  };
  const std::set<int> chosen(only.begin(), only.end());
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!chosen.empty() && !chosen.count(c.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s  %2d  %-36s %s; %.1f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), secs, c.budget_s, in_time ? "" : ", exceeded");
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
