#include <doctest.h>

#include "common.hpp"
#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/summation.hpp"

using namespace evlab;
using testing::even_form;
using testing::odd_form;
using testing::rel;

TEST_CASE("root numbers and gamma shifts follow parity") {
  CHECK(root_number(even_form()) == 1);
  CHECK(root_number(odd_form()) == -1);
  CHECK(standard_gamma_factor(odd_form()).shifts[0].real() == 1.0);
  CHECK(adjoint_gamma_factor(even_form()).degree() == 3);
}

TEST_CASE("completed L satisfies its functional equation") {
  for (const MaassForm* f : {&even_form(), &odd_form()}) {
    const double eps = root_number(*f);
    for (cplx s : {cplx(0.3, 1.5), cplx(0.1, 12.0), cplx(0.8, 45.0), cplx(-0.5, 3.0), cplx(1.6, 8.0)})
      CHECK(rel(completed_l(*f, s).value, eps * completed_l(*f, 1.0 - s).value) < 1e-9);
  }
}

TEST_CASE("central values of the even form are real after completion") {
  for (double t : {3.0, 30.0, 300.0}) {
    const cplx v = completed_l(even_form(), {0.5, t}).value;
    CHECK(std::abs(v.imag()) <= 1e-10 * std::abs(v) + 1e-300);
  }
}

TEST_CASE("Dirichlet series and AFE agree right of the strip") {
  for (cplx s : {cplx(1.3, 0.0), cplx(1.5, 10.0), cplx(2.5, 60.0)}) {
    CHECK(rel(l_dirichlet(even_form(), s).value, afe_smoothed(even_form(), s).value) < 1e-8);
    CHECK(rel(l_dirichlet(odd_form(), s).value, afe_smoothed(odd_form(), s).value) < 1e-8);
  }
  CHECK_THROWS_AS(l_dirichlet(even_form(), {1.0, 3.0}), DomainError);
}

TEST_CASE("AFE is independent of its smoothing parameters") {
  SmoothedAfeOptions alt;
  alt.gauss = 0.03;
  alt.contour = 1.2;
  alt.step = 0.07;
  for (double t : {0.0, 4.0, 19.0, 21.0, 90.0, 400.0}) {
    const cplx s(0.5, t);
    const LValue a = afe_smoothed(even_form(), s), b = afe_smoothed(even_form(), s, alt);
    CHECK(std::abs(a.value - b.value) <= 1e-9 * std::max(1.0, std::abs(a.value)));
  }
}

TEST_CASE("adjoint AFE against its Dirichlet series") {
  const long N = 100000;
  const auto b = adjoint_coefficients(even_form(), N);
  CHECK(b[1] == 1.0);
  for (cplx s : {cplx(3.0, 0.0), cplx(3.0, 5.0), cplx(2.5, 14.0), cplx(2.5, 30.0)}) {
    CompensatedComplexSum acc;
    for (long m = N; m >= 1; --m) acc.add(b[m] * std::exp(-s * std::log(double(m))));
    CHECK(rel(acc.value(), adjoint_l(even_form(), s).value) < 1e-9);
  }
}

TEST_CASE("l_value chooses a method by region") {
  const LMethod right = l_value(even_form(), {2.0, 5.0}).method;
  CHECK((right == LMethod::dirichlet_series || right == LMethod::afe_smoothed));
  CHECK(l_value(even_form(), {0.5, 5.0}).method == LMethod::afe_smoothed);
  CHECK(l_value(even_form(), {-1.0, 5.0}).method == LMethod::functional_equation);
  CHECK(rel(l_value(even_form(), {-1.0, 5.0}).value, afe_smoothed(even_form(), {-1.0, 5.0}).value) < 1e-9);
}

TEST_CASE("central L-values need more coefficients high up") {
  const auto& g = standard_gamma_factor(even_form());
  CHECK(afe_required_terms(g, {0.5, 100.0}) < afe_required_terms(g, {0.5, 1000.0}));
  CHECK_THROWS_AS(afe_smoothed(even_form(), {0.5, 1e7}), InsufficientCoefficients);
}

TEST_CASE("literal AFE weights") {
  for (long m : {1L, 10L, 100L}) CHECK(std::abs(afe_weight(100.0, m, -1, 1) - std::conj(afe_weight(100.0, m, +1, 1))) < 1e-13);
  CHECK(std::abs(afe_weight(100.0, 1, +1, 1) - 1.0) < 0.05);
  CHECK(std::abs(afe_weight(100.0, 1000, +1, 1)) < 0.01);
  CHECK_THROWS_AS(afe_weight(1.0, 1, +1, 1), DomainError);
}

TEST_CASE("literal two-sum AFE stays within its stated error far above t_phi^2") {
  for (double tau : {1200.0, 2400.0}) {
    const cplx s(0.5, -tau);
    const LValue lit = l_afe(even_form(), s, tau);
    CHECK(lit.method == LMethod::afe_paper);
    CHECK(std::abs(lit.value - afe_smoothed(even_form(), s).value) <= lit.err_estimate);
  }
  CHECK_THROWS_AS(l_afe(even_form(), {0.5, 1.0}, 1.0), DomainError);
}

TEST_CASE("functional-equation residual on a strip grid") {
  const auto& f = even_form();
  CHECK(rel(completed_l(f, {0.7, 10.0}).value, completed_l(f, {0.3, -10.0}).value) < 1e-6);
  for (int k = 0; k < 30; ++k) {
    const cplx s(0.3 + 0.4 * (k % 5) / 4.0, -120.0 + 240.0 * k / 29.0);
    CHECK(rel(completed_l(f, s).value, completed_l(f, 1.0 - s).value) < 1e-6);
  }
}
