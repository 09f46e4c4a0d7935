#include <doctest.h>

#include "common.hpp"
#include "evlab/eisen2.hpp"
#include "evlab/errors.hpp"
#include "evlab/wimu.hpp"

using namespace evlab;
using testing::even_form;
using testing::odd_form;
using testing::rel;

TEST_CASE("both assemblies of mu agree") {
  for (int n : {3, 4, 5, 6}) {
    MuEvaluator ev(even_form(), n);
    for (double t : {2.0, 3.3, 12.0, 57.0, 140.0}) CHECK(rel(ev.completed(t).value, ev.gamma_form(t).value) < 1e-9);
  }
}

TEST_CASE("mu is real for even forms") {
  for (double t : {2.5, 40.0}) {
    const cplx v = mu_completed(even_form(), 3, t).value;
    CHECK(std::abs(v.imag()) < 1e-12 * std::abs(v));
  }
}

TEST_CASE("|mu|^2 through L(1, ad) matches the square") {
  const cplx a(0.3, -1.7);
  for (int n : {3, 5}) {
    MuEvaluator ev(even_form(), n, a);
    for (double t : {2.0, 25.0, 110.0}) {
      CHECK(ev.squared(t) == doctest::Approx(std::norm(ev.completed(t).value)).epsilon(1e-9));
      const double z = std::abs(riemann_zeta(cplx(n / 2.0, n * t)));
      CHECK(ev.zeta_weighted_squared(t) == doctest::Approx(std::pow(z, 4) * ev.squared(t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("mu is linear in a_n") {
  const cplx a(-2.0, 0.5);
  CHECK(rel(mu_completed(even_form(), 4, 9.0, a).value, a * mu_completed(even_form(), 4, 9.0).value) < 1e-14);
  CHECK(mu_squared(even_form(), 4, 9.0, a) == doctest::Approx(std::norm(a) * mu_squared(even_form(), 4, 9.0)));
}

TEST_CASE("odd forms annihilate mu") {
  for (int n : {3, 4, 7}) {
    CHECK(mu_completed(odd_form(), n, 5.0).value == cplx(0.0));
    CHECK(mu_gamma_form(odd_form(), n, 5.0).value == cplx(0.0));
    CHECK(mu_squared(odd_form(), n, 5.0) == 0.0);
    CHECK(MuEvaluator(odd_form(), n).vanishes());
  }
}

TEST_CASE("mu preconditions") {
  CHECK_THROWS_AS(mu_completed(even_form(), 2, 5.0), DomainError);
  CHECK_THROWS_AS(mu_completed(even_form(), 3, 1.5), DomainError);
  CHECK_NOTHROW(mu_completed(even_form(), 3, -2.0));
}

TEST_CASE("special L-values at (3-n)/2") {
  const double ref[] = {5.291369867902, 8.957120575438, 16.344101803933, 31.655140516643};
  for (int n = 3; n <= 6; ++n)
    CHECK(MuEvaluator(even_form(), n).l_special().real() == doctest::Approx(ref[n - 3]).epsilon(1e-10));
}

TEST_CASE("Stirling envelope of the Gamma quotient") {
  for (int n : {3, 4, 5}) {
    double prev = 1e300;
    for (double t = 50.0; t <= 800.0; t *= 2.0) {
      const double e = std::abs(gamma_factor_sq(even_form(), n, t) / stirling_gamma_sq(n, t) - 1.0);
      CHECK(e <= 5.0 / t);
      CHECK(e < prev);
      prev = e;
    }
  }
}

TEST_CASE("literal display phase has unit modulus") {
  CHECK(std::abs(literal_display_phase(3, 17.0)) == doctest::Approx(1.0));
}

TEST_CASE("cached special factors") {
  MuEvaluator ev(even_form(), 4);
  CHECK(ev.completed_special() == doctest::Approx(completed_l(even_form(), -0.5).value.real()).epsilon(1e-12));
  CHECK(ev.rho1() * ev.rho1() == doctest::Approx(even_form().rho1_sq()));
  CHECK(ev.completed_adjoint_at_1() * even_form().rho1_sq() == doctest::Approx(8.0));
}
