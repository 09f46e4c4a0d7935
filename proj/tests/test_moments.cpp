#include <doctest.h>

#include "common.hpp"
#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/moments.hpp"
#include "evlab/wimu.hpp"

using namespace evlab;
using testing::even_form;
using testing::even_form2;
using testing::odd_form;

namespace {

MomentOptions short_window(double ratio) {
  MomentOptions o;
  o.window_ratio = ratio;
  return o;
}

}  // namespace

TEST_CASE("integrate_window on closed-form integrals") {
  auto w = integrate_window([](double t) { return cplx(std::sin(t)); }, 0.0, kPi, 0.1, 1e-8, 6, 1);
  CHECK(w.value.real() == doctest::Approx(2.0).epsilon(1e-10));
  // int_1^2 e^{i a t} dt
  const double a = 40.0;
  const cplx exact = (std::exp(cplx(0.0, 2 * a)) - std::exp(cplx(0.0, a))) / cplx(0.0, a);
  auto o = integrate_window([a](double t) { return std::exp(cplx(0.0, a * t)); }, 1.0, 2.0, 0.01, 1e-9, 6, 2);
  CHECK(std::abs(o.value - exact) < 1e-10);
  CHECK(o.err < 1e-9);
}

TEST_CASE("integrate_window refuses to report an unconverged grid") {
  auto f = [](double t) { return std::exp(cplx(0.0, 500.0 * t)); };
  CHECK_THROWS_AS(integrate_window(f, 0.0, 1.0, 0.5, 1e-6, 1, 1), BudgetExceeded);
  CHECK_THROWS_AS(integrate_window(f, 1.0, 0.0, 0.1, 1e-6, 1, 1), DomainError);
}

TEST_CASE("window additivity") {
  auto f = [](double t) { return std::exp(cplx(0.0, 3.0 * t * std::log(t))) * std::pow(t, -1.0); };
  auto whole = integrate_window(f, 50.0, 100.0, 0.004, 1e-7, 4, 1);
  auto left = integrate_window(f, 50.0, 75.0, 0.004, 1e-7, 4, 1);
  auto right = integrate_window(f, 75.0, 100.0, 0.004, 1e-7, 4, 1);
  CHECK(std::abs(whole.value - left.value - right.value) < 1e-10 * std::abs(whole.value) + whole.err + left.err + right.err);
}

TEST_CASE("fit_line with Student-t interval") {
  // reference: scipy.stats.linregress and t.ppf(0.975, 2)
  LineFit f = fit_line({1, 2, 3, 4}, {2.1, 3.9, 6.2, 7.8});
  CHECK(f.slope == doctest::Approx(1.94).epsilon(1e-14));
  CHECK(f.intercept == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(f.slope_se == doctest::Approx(0.09055385138137617).epsilon(1e-12));
  CHECK(f.slope_ci95 == doctest::Approx(0.38962177583057694).epsilon(1e-10));
  CHECK_THROWS_AS(fit_line({1.0}, {2.0}), DomainError);
  CHECK_THROWS_AS(fit_line({1.0, 1.0, 1.0}, {2.0, 3.0, 4.0}), DomainError);
}

TEST_CASE("Jutila coefficient is (12/pi^2) L(1, ad)") {
  const auto& f = even_form();
  CHECK(jutila_coefficient(f) == doctest::Approx(12.0 / (kPi * kPi) * adjoint_l(f, 1.0).value.real()).epsilon(1e-10));
  CHECK(jutila_prediction(f, 100.0, 0.5) == doctest::Approx(jutila_coefficient(f) * 100.0 * (std::log(100.0) + 0.5)));
}

TEST_CASE("variance constants: both displays agree and scale with |a_n|^2") {
  for (int n : {3, 4, 5, 6}) {
    VarianceConstants c = variance_constants(even_form(), n);
    CHECK(c.vn_form == doctest::Approx(c.log_form).epsilon(1e-9));
    VarianceConstants d = variance_constants(even_form(), n, cplx(0.0, 3.0));
    CHECK(d.log_form == doctest::Approx(9.0 * c.log_form).epsilon(1e-12));
  }
  CHECK(variance_constants(odd_form(), 3).log_form == 0.0);
}

TEST_CASE("mean value over a short window against direct sampling") {
  const double T = 20.0;
  MomentReport r = mean_value(even_form(), 3, T, 1.0, short_window(1.25));
  MuEvaluator ev(even_form(), 3);
  // trapezoid on a uniform grid, independent of the Simpson driver
  const int N = 4000;
  const double h = 0.25 * T / N;
  double acc = 0.5 * (ev.completed(T).value.real() + ev.completed(1.25 * T).value.real());
  for (int k = 1; k < N; ++k) acc += ev.completed(T + k * h).value.real();
  CHECK(r.integral.real() == doctest::Approx(acc * h / T).epsilon(1e-4));
  CHECK(r.predicted.real() == doctest::Approx(std::pow(T, -1.0) * std::sqrt(std::log(T))));
}

TEST_CASE("oscillatory decomposition of the mean value") {
  MomentReport r = osc_first_moment(even_form(), 3, 25.0, 1.0, short_window(1.5));
  CHECK(r.diagnostics.at("decomposition_ok") == 1.0);
  CHECK(r.diagnostics.at("decomposition_residual") <= r.diagnostics.at("decomposition_bound"));
  MomentReport m = mean_value(even_form(), 3, 25.0, 1.0, short_window(1.5));
  CHECK(r.diagnostics.at("mean_value_re") == doctest::Approx(m.integral.real()).epsilon(1e-12));
}

TEST_CASE("variance ratio does not depend on |a_n|") {
  MomentReport a = weighted_variance(even_form(), 3, 50.0, 1.0, short_window(1.1));
  MomentReport b = weighted_variance(even_form(), 3, 50.0, cplx(0.0, 2.0), short_window(1.1));
  CHECK(a.ratio.real() == doctest::Approx(b.ratio.real()).epsilon(1e-12));
  CHECK(b.integral.real() == doctest::Approx(4.0 * a.integral.real()).epsilon(1e-12));
  CHECK(a.diagnostics.at("constants_rel_gap") < 1e-9);
}

TEST_CASE("cross variance of a form with itself is the diagonal") {
  MomentReport c = cross_variance(even_form(), even_form(), 3, 50.0, 1.0, short_window(1.1));
  CHECK(c.integral.real() == doctest::Approx(c.diagnostics.at("diag_phi")).epsilon(1e-12));
  CHECK(c.ratio.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cross variance of distinct forms is a correlation below one") {
  MomentReport c = cross_variance(even_form(), even_form2(), 3, 50.0, 1.0, short_window(1.1));
  CHECK(c.ratio.real() >= 0.0);
  CHECK(c.ratio.real() < 1.0);
}

TEST_CASE("parity annihilation propagates to the moments") {
  MomentOptions o = short_window(1.1);
  CHECK(mean_value(odd_form(), 3, 20.0, 1.0, o).integral == cplx(0.0));
  CHECK(osc_first_moment(odd_form(), 3, 20.0, 1.0, o).predicted == cplx(0.0));
  CHECK(weighted_variance(odd_form(), 3, 50.0, 1.0, o).integral == cplx(0.0));
  CHECK(cross_variance(odd_form(), even_form(), 3, 50.0, 1.0, o).integral == cplx(0.0));
  CHECK(cross_variance(even_form(), odd_form(), 3, 50.0, 1.0, o).integral == cplx(0.0));
}

TEST_CASE("second moment is positive and of the predicted order") {
  MomentReport r = second_moment(even_form(), 50.0, short_window(1.2));
  CHECK(r.integral.real() > 0.0);
  CHECK(r.predicted.real() == doctest::Approx(jutila_prediction(even_form(), 50.0, 0.0)));
  MomentReport o = second_moment(odd_form(), 50.0, short_window(1.2));
  CHECK(o.integral.real() > 0.0);
}

TEST_CASE("moment preconditions") {
  CHECK_THROWS_AS(mean_value(even_form(), 3, 5.0), DomainError);
  CHECK_THROWS_AS(weighted_variance(even_form(), 3, 20.0), DomainError);
  CHECK_THROWS_AS(second_moment(even_form(), 10.0), DomainError);
}
