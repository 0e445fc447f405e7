#include "recordlab/charpoly.hpp"
#include "recordlab/error.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace recordlab;
using cplx = std::complex<double>;

TEST_CASE("small spectra") {
  Spectrum s2 = char_zeros(2);
  REQUIRE(s2.lambdas.size() == 1);
  CHECK(s2.lambdas[0].real() == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(s2.lambdas[0].imag() == 0.0);
  Spectrum s3 = char_zeros(3);
  REQUIRE(s3.lambdas.size() == 2);
  CHECK(s3.lambdas[0].real() == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(s3.lambdas[0].imag() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s3.lambdas[1] == std::conj(s3.lambdas[0]));
  CHECK(char_zeros(4, 2.0).lambdas.size() == 4);
  CHECK_THROWS_AS(char_zeros(1), DomainError);
  CHECK_THROWS_AS(char_zeros(3, -1.0), DomainError);
}

TEST_CASE("spectra up to d = 50") {
  for (int d = 2; d <= 50; ++d) {
    Spectrum s = char_zeros(d);
    CHECK(s.lambdas.size() == static_cast<std::size_t>(d - 1));
    CHECK(s.max_residual <= 1e-10);
    cplx sum = 0.0;
    int real = 0;
    for (cplx z : s.lambdas) {
      sum += z;
      if (z.imag() == 0.0) {
        ++real;
        if (d % 2 == 0) CHECK(std::abs(z.real() + d + 1) <= 1e-12 * (d + 1));
      }
    }
    CHECK(real == (d % 2 == 0 ? 1 : 0));
    // Nonzero roots of z·(z^{d−1} + … ) sum to −d(d+1)/2.
    CHECK(std::abs(sum.real() + d * (d + 1) / 2.0) <= 1e-9 * d * d);
    CHECK(std::abs(sum.imag()) <= 1e-9 * d * d);
  }
}

TEST_CASE("polynomial coefficients") {
  auto c = char_poly_coefficients(4);
  REQUIRE(c.size() == 5);
  CHECK(c[0] == "24");
  CHECK(c[1] == "50");
  CHECK(c[2] == "35");
  CHECK(c[3] == "10");
  CHECK(c[4] == "1");
}

TEST_CASE("dominant branch") {
  for (int d : {1, 2, 5, 9}) CHECK(dominant_branch(d, 1.0) == 0.0);
  CHECK(dominant_branch(2, 1.21) == doctest::Approx((-3 + std::sqrt(1 + 8 * 1.21)) / 2).epsilon(1e-13));
  const double h = 1e-5;
  CHECK((dominant_branch(2, 1 + h) - dominant_branch(2, 1 - h)) / (2 * h) == doctest::Approx(2.0 / 3).epsilon(1e-8));
  auto c = branch_series_coeffs(2);
  CHECK(c[0] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(5.0 / 27).epsilon(1e-15));
  CHECK(c[2] == doctest::Approx(7.0 / 243).epsilon(1e-14));
  CHECK_THROWS_AS(dominant_branch(3, 2.0), DomainError);
}

TEST_CASE("branch tracking returns to the spectrum") {
  auto z = track_branches(6, 1.0 + 1e-3, 1.0, 20);
  CHECK(z.size() == 6);
  int near_zero = 0;
  for (cplx r : z) near_zero += std::abs(r) < 1e-10 ? 1 : 0;
  CHECK(near_zero == 1);
}

TEST_CASE("limit curve") {
  auto pts = limit_curve(100);
  CHECK(pts.size() > 100);
  for (cplx z : pts) CHECK(limit_curve_modulus(z) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(limit_curve_modulus(cplx(-0.5, 0.5)) != doctest::Approx(1.0));
}

TEST_CASE("zeros csv layout") {
  std::string csv = zeros_csv(2, 3, 1.0, 10);
  CHECK(csv.rfind("d,re,im\n2,-1.5,0\n3,-1,", 0) == 0);
  CHECK(csv.find("\n0,") != std::string::npos);
}
