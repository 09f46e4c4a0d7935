#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <numeric>

#include "common.hpp"
#include "evlab/errors.hpp"
#include "evlab/lfun.hpp"
#include "evlab/maass.hpp"

using namespace evlab;
using testing::even_form;
using testing::odd_form;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/evlab_test_" + name;
  std::ofstream(path) << body;
  return path;
}

std::map<long, double> primes_up_to(long pmax, double value) {
  std::map<long, double> m;
  for (long p = 2; p <= pmax; ++p) {
    bool prime = true;
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (prime) m[p] = value;
  }
  return m;
}

}  // namespace

TEST_CASE("shipped forms load with their parity and range") {
  CHECK(even_form().is_even());
  CHECK(!odd_form().is_even());
  CHECK(even_form().spectral_param() == doctest::Approx(13.779751351890738));
  CHECK(even_form().pmax() == 100000);
  CHECK(even_form().lambda(1) == 1.0);
}

TEST_CASE("Hecke relations hold on the shipped data") {
  const auto& f = even_form();
  for (long m = 2; m < 200; ++m)
    for (long k = 2; k < 200; ++k)
      if (std::gcd(m, k) == 1) CHECK(f.lambda(m * k) == doctest::Approx(f.lambda(m) * f.lambda(k)).epsilon(1e-12));
  for (long p : {2L, 3L, 97L}) CHECK(f.lambda(p * p) == doctest::Approx(f.lambda(p) * f.lambda(p) - 1.0));
}

TEST_CASE("lambda beyond the prime range") {
  MaassForm f(9.5, Parity::odd, 50, primes_up_to(50, 0.1));
  CHECK_NOTHROW(f.lambda(47 * 43));
  CHECK_THROWS_AS(f.lambda(53), InsufficientCoefficients);
  try {
    f.lambda(2 * 101);
  } catch (const InsufficientCoefficients& e) {
    CHECK(e.required_pmax() >= 101);
  }
  CHECK(!f.has_lambda(59));
  CHECK(std::isnan(f.table()[59]));
}

TEST_CASE("constructor rejects inconsistent data") {
  auto primes = primes_up_to(30, 0.2);
  CHECK_THROWS_AS(MaassForm(-1.0, Parity::even, 30, primes), DataError);
  auto missing = primes;
  missing.erase(7);
  CHECK_THROWS_AS(MaassForm(9.0, Parity::even, 30, missing), DataError);
  auto big = primes;
  big[3] = 5.0;
  CHECK_THROWS_AS(MaassForm(9.0, Parity::even, 30, big), DataError);
  CHECK_THROWS_AS(MaassForm(9.0, Parity::even, 30, primes, {{6, 0.5}}), DataError);
  CHECK_NOTHROW(MaassForm(9.0, Parity::even, 30, primes, {{6, 0.04}}));
}

TEST_CASE("form file errors name the line") {
  const auto p = write_temp("bad.txt", "R 9.5\nparity sideways\npmax 3\na 2 0.1\na 3 0.2\n");
  try {
    load_maass_form(p);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_maass_form("/nonexistent/form.txt"), DataError);
  const auto q = write_temp("nopmax.txt", "R 9.5\nparity even\na 2 0.1\n");
  CHECK_THROWS_AS(load_maass_form(q), DataError);
}

TEST_CASE("divisor sums") {
  CHECK(divisor_sigma(12, 1.0).real() == doctest::Approx(28.0));
  CHECK(divisor_sigma(12, 0.0).real() == doctest::Approx(6.0));
  CHECK(std::abs(divisor_sigma(7, {0.0, 2.0}) - (1.0 + std::exp(cplx(0.0, 2.0) * std::log(7.0)))) < 1e-14);
}

TEST_CASE("rho(1)^2 is 8 / Lambda(1, ad)") {
  for (const MaassForm* f : {&even_form(), &odd_form()})
    CHECK(f->rho1_sq() * completed_adjoint_l(*f, 1.0).value.real() == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("L(1, ad) from the smoothed Dirichlet series approaches the AFE value") {
  const auto& f = even_form();
  const double L = adjoint_l_at_1(f).value;
  const double e1 = std::abs(adjoint_l_at_1_smoothed(f, 500.0).value / L - 1.0);
  const double e2 = std::abs(adjoint_l_at_1_smoothed(f, 2500.0).value / L - 1.0);
  CHECK(e2 < e1);
  CHECK(e2 < 1e-4);
}
