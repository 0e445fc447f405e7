#include "recordlab/error.hpp"
#include "recordlab/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace recordlab;
using namespace recordlab::specfun;
using std::numbers::egamma;
using std::numbers::pi;

TEST_CASE("log gamma") {
  CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
  CHECK(ln_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-15));
  CHECK(std::abs(ln_gamma(1.0)) < 1e-15);
  CHECK_THROWS(ln_gamma(-2.0));
  // lnΓ(1+i) = −0.6509231993 − 0.3016403205i
  cplx g = ln_gamma(cplx(1.0, 1.0));
  CHECK(g.real() == doctest::Approx(-0.6509231993018563).epsilon(1e-13));
  CHECK(g.imag() == doctest::Approx(-0.3016403204675331).epsilon(1e-13));
  CHECK(ln_gamma_ratio(1e8, 0.5, 0.0) == doctest::Approx(0.5 * std::log(1e8) - 0.125e-8).epsilon(1e-14));
}

TEST_CASE("polygamma") {
  CHECK(polygamma(0, 1.0) == doctest::Approx(-egamma).epsilon(1e-15));
  CHECK(polygamma(0, 1.5) - polygamma(0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(polygamma(1, 1.0) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK_THROWS(polygamma(0, 0.0));
  // ψ(i) = 0.0946503206 + 2.0766740474i, ψ′(i) = −0.5369999033 − 0.7942335427i
  cplx p = polygamma(0, cplx(0.0, 1.0));
  CHECK(p.real() == doctest::Approx(0.09465032062247697).epsilon(1e-12));
  CHECK(p.imag() == doctest::Approx(2.076674047468581).epsilon(1e-12));
  cplx q = polygamma(1, cplx(0.0, 1.0));
  CHECK(q.real() == doctest::Approx(-0.5369999033772361).epsilon(1e-12));
  CHECK(q.imag() == doctest::Approx(-0.7942335427593189).epsilon(1e-12));
}

TEST_CASE("zeta") {
  CHECK(zeta(2.0) == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(zeta(4.0) == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-15));
  CHECK(hurwitz_zeta(2.0, 0.5) == doctest::Approx(pi * pi / 2).epsilon(1e-14));
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic_exact(3, 1) == Rational(11, 6));
  CHECK(harmonic_exact(2, 2) == Rational(5, 4));
  CHECK(harmonic_exact(0, 3) == 0);
  Harmonic h = harmonic(100, 1);
  CHECK(h.has_exact);
  CHECK(h.value == doctest::Approx(5.187377517639621).epsilon(1e-15));
  CHECK(harmonic_value(1000000, 2) == doctest::Approx(pi * pi / 6 - 1e-6 + 5e-13).epsilon(1e-14));
  CHECK_FALSE(harmonic(kHarmonicExactLimit + 1, 1).has_exact);
}

TEST_CASE("hypergeometric series") {
  const double a1[] = {1.0, 1.0}, b1[] = {2.0};
  CHECK(p_f_q(a1, b1, 0.5).value == doctest::Approx(2 * std::log(2.0)).epsilon(1e-14));
  const double a2[] = {1.0, 3.0}, b2[] = {3.0};
  CHECK(p_f_q(a2, b2, 0.25).value == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  // ₂F₁(1/2,1/2;3/2;1/4) = 2·arcsin(1/2)
  const double a3[] = {0.5, 0.5}, b3[] = {1.5};
  CHECK(p_f_q(a3, b3, 0.25).value == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK_THROWS(p_f_q(a1, b1, 1.5));
}

TEST_CASE("accelerated sums") {
  SumOptions alt;
  alt.method = Acceleration::Euler;
  alt.eps = 1e-13;
  SeriesValue s = euler_sum([](long j) { return (j % 2 ? -1.0 : 1.0) / (j + 1.0); }, alt);
  CHECK(std::abs(s.value - std::log(2.0)) < 1e-12);
  CHECK(s.terms_used < 60);

  for (Acceleration m : {Acceleration::Richardson, Acceleration::HurwitzTail, Acceleration::Auto}) {
    SumOptions o;
    o.method = m;
    o.decay = m == Acceleration::Auto ? 0.0 : 2.0;
    SeriesValue z = euler_sum([](long j) { return 1.0 / ((j + 1.0) * (j + 1.0)); }, o);
    CHECK(std::abs(z.value - pi * pi / 6) < 1e-10);
    CHECK(z.err < 1e-9);
  }
  SumOptions dd;
  dd.method = Acceleration::Richardson;
  dd.decay = 2.0;
  dd.precision = Precision::DoubleDouble;
  CHECK(std::abs(euler_sum([](long j) { return 1.0 / ((j + 1.0) * (j + 1.0)); }, dd).value - pi * pi / 6) < 1e-12);
  CHECK_THROWS(euler_sum([](long) { return 1.0; }, alt));
}

TEST_CASE("quadrature") {
  CHECK(quad1d([](double x) { return x * x; }, 0.0, 1.0).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(quad1d([](double x) { return std::exp(-x); }, 0.0, INFINITY).value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(quad1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-12));
  const double bp[] = {0.5};
  CHECK(quad1d([](double x) { return std::abs(x - 0.5); }, 0.0, 1.0, 1e-12, bp).value ==
        doctest::Approx(0.25).epsilon(1e-13));
  SeriesValue q = quad2d([](double x, double y) { return x * y; }, 0.0, 1.0, 0.0, 2.0);
  CHECK(q.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("double-double arithmetic") {
  DoubleDouble a(1.0), b(1e-20);
  DoubleDouble c = a + b - a;
  CHECK(static_cast<double>(c) == doctest::Approx(1e-20).epsilon(1e-12));
  DoubleDouble third = DoubleDouble(1.0) / DoubleDouble(3.0);
  DoubleDouble back = third * DoubleDouble(3.0) - DoubleDouble(1.0);
  CHECK(std::abs(static_cast<double>(back)) < 1e-30);
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("binomials") {
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial_exact(60, 30) == BigInt("118264581564861424"));
  CHECK(factorial_exact(20) == BigInt("2432902008176640000"));
}
