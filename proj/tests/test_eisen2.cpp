#include <doctest.h>

#include <limits>
#include <numeric>
#include <random>

#include "common.hpp"
#include "evlab/eisen2.hpp"
#include "evlab/errors.hpp"
#include "evlab/summation.hpp"

using namespace evlab;
using testing::even_form;
using testing::odd_form;
using testing::rel;

namespace {

UpperHalfPoint invert(UpperHalfPoint z) {
  const double r2 = z.x * z.x + z.y * z.y;
  return {-z.x / r2, z.y / r2};
}

}  // namespace

TEST_CASE("reduce lands in the fundamental domain") {
  for (UpperHalfPoint z : {UpperHalfPoint{3.3, 0.01}, UpperHalfPoint{-0.49, 0.2}, UpperHalfPoint{0.1, 5.0}}) {
    UpperHalfPoint w = reduce(z);
    CHECK(std::abs(w.x) <= 0.5 + 1e-12);
    CHECK(w.x * w.x + w.y * w.y >= 1.0 - 1e-12);
  }
  UpperHalfPoint w = reduce({0.1, 5.0});
  CHECK(w.x == doctest::Approx(0.1));
  CHECK(w.y == doctest::Approx(5.0));
}

TEST_CASE("Eisenstein series matches the half lattice sum over coprime pairs") {
  for (double s : {3.0, 4.5}) {
    const UpperHalfPoint z{-0.23, 1.1};
    CompensatedSum acc;
    const int N = 400;
    for (int c = -N; c <= N; ++c)
      for (int d = -N; d <= N; ++d)
        if (std::gcd(c, d) == 1)
          acc.add(std::pow(z.y, s) / std::pow((c * z.x + d) * (c * z.x + d) + c * c * z.y * z.y, s));
    CHECK(rel(0.5 * acc.value(), eisenstein_value(s, z, eisenstein_terms(s, z.y))) < 1e-8);
  }
}

TEST_CASE("Eisenstein series is modular on the critical line") {
  const cplx s(0.5, 11.0);
  for (UpperHalfPoint z : {UpperHalfPoint{0.31, 0.9}, UpperHalfPoint{-0.05, 0.99}}) {
    UpperHalfPoint w = invert(z);
    CHECK(rel(eisenstein_value(s, z, eisenstein_terms(s, z.y)), eisenstein_value(s, w, eisenstein_terms(s, w.y))) <
          1e-10);
  }
}

TEST_CASE("Maass forms are modular and have the right parity") {
  for (const MaassForm* f : {&even_form(), &odd_form()}) {
    UpperHalfPoint z{0.27, 0.74};
    UpperHalfPoint w = invert(z);
    const double a = maass_value(*f, z, maass_terms(*f, z.y));
    CHECK(a == doctest::Approx(maass_value(*f, w, maass_terms(*f, w.y))).epsilon(1e-9));
    const double m = maass_value(*f, {-z.x, z.y}, maass_terms(*f, z.y));
    CHECK(m == doctest::Approx(f->is_even() ? a : -a).epsilon(1e-12));
  }
}

TEST_CASE("Maass form has unit Petersson norm") {
  const auto& f = even_form();
  RowIntegrand sq = [&f](double y, std::span<const double> xs, std::span<cplx> out) {
    const long M = maass_terms(f, y);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double v = maass_value(f, {xs[k], y}, M);
      out[k] = v * v;
    }
  };
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  auto r = fundamental_domain_integral(sq, spec, 6.0);
  CHECK(r.value.real() == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("Bessel moment quadrature agrees with its Gamma closed form") {
  // value from mpmath quadrature at 25 digits
  const cplx ref(3.748635799547458e-18, -4.940192428643480e-21);
  CHECK(rel(bessel_moment_closed(13.78, {-0.25, 0.5}, 2.0), ref) < 1e-12);
  for (cplx nu : {cplx(-0.25, 0.5), cplx(-0.5, 2.0), cplx(0.0, 1.0)})
    for (cplx s : {cplx(2.0, 0.0), cplx(2.5, 1.0)})
      CHECK(rel(bessel_moment(9.5, nu, s), bessel_moment_closed(9.5, nu, s)) < 1e-9);
  CHECK_THROWS_AS(bessel_moment(9.5, {0.8, 0.0}, 0.5), DomainError);
}

TEST_CASE("unfolded series matches the closed form") {
  const auto& f = even_form();
  for (int n : {3, 4, 5})
    CHECK(rel(i_series(f, n, 1.0, 2.0), i_closed(f, n, 1.0, 2.0)) < 1e-4);
  CHECK(rel(i_series(f, 3, 0.5, 2.5), i_closed(f, 3, 0.5, 2.5)) < 1e-4);
}

TEST_CASE("unfolding preconditions") {
  CHECK_THROWS_AS(i_closed(odd_form(), 3, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(i_closed(even_form(), 2, 1.0, 2.0), DomainError);
  CHECK_THROWS_AS(i_series(even_form(), 3, 1.0, 1.2), DomainError);
}

TEST_CASE("fundamental domain volume") {
  auto one = [](double, double) { return cplx(1.0); };
  auto r = fundamental_domain_integral(one, {}, std::numeric_limits<double>::infinity());
  CHECK(r.value.real() == doctest::Approx(kPi / 3.0).epsilon(1e-12));
  CHECK(r.converged);
  auto capped = fundamental_domain_integral(one, {}, 12.0);
  CHECK(capped.value.real() == doctest::Approx(kPi / 3.0 - 1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("Eisenstein series high in the cusp against a wide lattice sum") {
  const UpperHalfPoint z{0.0, 3.0};
  CompensatedSum acc;
  const int N = 2000;
  for (int c = -N; c <= N; ++c)
    for (int d = -N; d <= N; ++d)
      if (std::gcd(c, d) == 1) {
        const double q = double(d) * d + double(c) * c * z.y * z.y;
        acc.add(z.y * z.y / (q * q));
      }
  CHECK(rel(0.5 * acc.value(), eisenstein_value(2.0, z, eisenstein_terms(2.0, z.y))) < 1e-6);
}

TEST_CASE("SL2(Z) invariance at random points and matrices") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.9, 2.0);
  std::uniform_int_distribution<int> ui(-3, 3);
  const cplx s(0.5, 4.0);
  const auto& f = even_form();
  int done = 0;
  while (done < 20) {
    int a = ui(rng), b = ui(rng), c = ui(rng), d = ui(rng);
    if (a * d - b * c != 1 || c == 0) continue;
    const std::complex<double> z(ux(rng), uy(rng));
    const std::complex<double> w = (double(a) * z + double(b)) / (double(c) * z + double(d));
    const UpperHalfPoint pz{z.real(), z.imag()}, pw{w.real(), w.imag()};
    const double mz = maass_value(f, pz, maass_terms(f, pz.y)), mw = maass_value(f, pw, maass_terms(f, pw.y));
    CHECK(std::abs(mz - mw) <= 1e-6 * std::max(1.0, std::abs(mz)));
    const cplx ez = eisenstein_value(s, pz, eisenstein_terms(s, pz.y));
    const cplx ew = eisenstein_value(s, pw, eisenstein_terms(s, pw.y));
    CHECK(rel(ez, ew) < 1e-6);
    ++done;
  }
}

TEST_CASE("modular invariance against the reduced point") {
  const UpperHalfPoint z{0.3, 0.9};
  const UpperHalfPoint w = reduce(z);
  const auto& f = even_form();
  CHECK(maass_value(f, z, maass_terms(f, z.y)) == doctest::Approx(maass_value(f, w, maass_terms(f, w.y))).epsilon(1e-6));
}

TEST_CASE("sharply truncated unfolding at 200 terms") {
  const auto& f = even_form();
  CHECK(rel(i_series(f, 3, 1.0, 2.0, 200, true), i_closed(f, 3, 1.0, 2.0)) < 1e-4);
}
