#include "recordlab/error.hpp"
#include "recordlab/varconstants.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace recordlab;
using std::numbers::pi;

namespace {
const double sqrtpi = std::sqrt(pi), ln2 = std::log(2.0), r2 = std::sqrt(2.0);
}

TEST_CASE("tabulated values") {
  CHECK(v_const(2).value.value == doctest::Approx(2.8612635493111788).epsilon(1e-12));
  CHECK(v_const(3).value.value == doctest::Approx(3.2252436444055769).epsilon(1e-12));
  CHECK(v_const(12).value.value == doctest::Approx(11.584607831460410).epsilon(1e-12));
  CHECK(vtilde_const(2).value.value == doctest::Approx(0.6846889279500362).epsilon(1e-12));
  CHECK(vtilde_const(7).value.value == doctest::Approx(5.1822076686160785).epsilon(1e-10));
  CHECK(vtilde_const(12).value.value == doctest::Approx(10.080686465197331).epsilon(1e-7));
  CHECK(k_const(2).value.value == doctest::Approx(0.3071428473569440).epsilon(1e-12));
  CHECK(k_const(7).value.value == doctest::Approx(0.3074456566078932).epsilon(1e-12));
  CHECK(k_const(12).value.value == doctest::Approx(1.9220104035188474).epsilon(1e-12));
}

TEST_CASE("closed forms at d = 2") {
  CHECK(std::abs(v_const(2).value.value - 2.0 / 3 * sqrtpi * (2 * pi * pi - 9 - 12 * ln2)) < 1e-10);
  CHECK(std::abs(vtilde_const(2).value.value - sqrtpi * (2 * ln2 - 1)) < 1e-10);
  CHECK(std::abs(k_const(2).value.value - sqrtpi * ln2 / 4) < 1e-10);
  CHECK(std::abs(i_d0_series(2).value - sqrtpi * (r2 - 1 + ln2 - std::log(r2 + 1))) < 1e-10);
  CHECK(std::abs(i_dd_series(2).value - sqrtpi * (2 - r2 - 2 * ln2 + std::log(r2 + 1))) < 1e-10);
  CHECK(i_dd_series(2).value == doctest::Approx(0.1433306567).epsilon(1e-9));
}

TEST_CASE("components recombine") {
  ConstantReport v = v_const(3);
  CHECK(v.component("C2").value == 0.0);
  const double d = 3;
  const double sum = d / (d - 1) * std::tgamma(1 / d) +
                     2 * d * d *
                         (v.component("C1").value + v.component("C2").value + v.component("C3").value +
                          v.component("Idd").value - v.component("I0").value);
  CHECK(sum == doctest::Approx(v.value.value).epsilon(1e-14));
  ConstantReport k = k_const(5);
  double ks = 0;
  for (const NamedValue& c : k.components) ks += c.value.value;
  CHECK(ks == doctest::Approx(k.value.value).epsilon(1e-14));
  CHECK(vtilde_const(4).components.size() == 1 + 2 * 3);
  CHECK_THROWS(v.component("nope"));
}

TEST_CASE("series against quadrature") {
  for (int d = 2; d <= 6; ++d) {
    CHECK(std::abs(i_d0_series(d).value - oracle_integral(OracleName::I0, d).value) < 1e-9);
    CHECK(std::abs(i_dd_series(d).value - oracle_integral(OracleName::Idd, d).value) < 1e-9);
    CHECK(std::abs(j_d0_series(d).value - oracle_integral(OracleName::J0, d).value) < 1e-9);
  }
  for (int d = 2; d <= 4; ++d) CHECK(std::abs(k_const(d).value.value - oracle_integral(OracleName::K, d).value) < 1e-8);
  CHECK(oracle_integral(OracleName::I0, 2).value == doctest::Approx(0.4005518047540).epsilon(1e-11));
}

TEST_CASE("monotone in d") {
  double pv = v_const(3).value.value, pt = vtilde_const(2).value.value;
  for (int d = 3; d <= 12; ++d) {
    double t = vtilde_const(d).value.value;
    CHECK(t > pt);
    pt = t;
    if (d > 3) {
      double v = v_const(d).value.value;
      CHECK(v > pv);
      pv = v;
    }
  }
}

TEST_CASE("options") {
  ConstOptions h;
  h.tail = specfun::Acceleration::HurwitzTail;
  CHECK(v_const(4, h).value.value == doctest::Approx(3.9779727442194553).epsilon(1e-11));
  ConstOptions dd;
  dd.precision = specfun::Precision::DoubleDouble;
  CHECK(v_const(5, dd).value.value == doctest::Approx(4.8452739171626114).epsilon(1e-12));
  ConstantReport t12 = vtilde_const(12, dd);
  CHECK(t12.value.value == doctest::Approx(10.080686465197331).epsilon(1e-14));
  CHECK(t12.value.err < 1e-13);
  CHECK(t12.components.size() == 1 + 2 * 11);
  CHECK(vtilde_const(12).value.err > std::abs(vtilde_const(12).value.value - 10.080686465197331));
  ConstOptions o;
  o.with_oracle = true;
  ConstantReport k = constant(ConstantName::K, 3, o);
  REQUIRE(k.oracle);
  CHECK(std::abs(k.oracle->value - k.value.value) < 1e-8);
  CHECK(parse_constant_name("vt") == ConstantName::VTilde);
  CHECK(to_string(ConstantName::K) == "K");
  CHECK_THROWS_AS(v_const(1), DomainError);
  CHECK_THROWS_AS(parse_constant_name("w"), DomainError);
}

TEST_CASE("csv") {
  std::vector<ConstantsRow> rows{{2, {vtilde_const(2)}}};
  std::string csv = constants_csv(rows, {ConstantName::VTilde});
  CHECK(csv.rfind("d,vtilde,vtilde_err,vtilde_10\n2,0.68468892795004,", 0) == 0);
  CHECK(csv.find(",0.6846889280\n") != std::string::npos);
}
