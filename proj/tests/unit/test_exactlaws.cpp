#include "recordlab/error.hpp"
#include "recordlab/exactlaws.hpp"
#include "recordlab/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace recordlab;
using std::numbers::pi;

namespace {
const Model S2(ModelKind::Simplex, 2), S3(ModelKind::Simplex, 3), C2(ModelKind::Hypercube, 2);
double H(long n, unsigned a = 1) { return specfun::harmonic_value(static_cast<unsigned long>(n), a); }
}  // namespace

TEST_CASE("kernel") {
  KernelDist k1 = chain_kernel(Model(ModelKind::Simplex, 1), 7);
  for (double p : k1.probs) CHECK(p == doctest::Approx(1.0 / 7).epsilon(1e-14));
  KernelDist k = chain_kernel(S2, 2);
  CHECK(k.probs[0] == doctest::Approx(5.0 / 6).epsilon(1e-14));
  CHECK(k.probs[1] == doctest::Approx(1.0 / 6).epsilon(1e-14));
  auto ex = chain_kernel_exact(S2, 2);
  CHECK(ex[0] == Rational(5, 6));
  CHECK(ex[1] == Rational(1, 6));
  auto cube = chain_kernel_exact(C2, 4);
  CHECK(cube[0] == Rational(25, 48));
  CHECK(cube[3] == Rational(1, 16));
  double sum = 0;
  for (double p : chain_kernel(S3, 5).probs) sum += p;
  CHECK(std::abs(sum - 1) < 1e-14);
  for (int d = 2; d <= 4; ++d)
    for (ModelKind kind : {ModelKind::Simplex, ModelKind::Hypercube})
      for (long n : {3L, 11L, 30L}) {
        const Model m(kind, d);
        KernelDist a = chain_kernel(m, n), b = chain_kernel(m, n, KernelMethod::Quadrature);
        for (std::size_t i = 0; i < a.probs.size(); ++i) CHECK(std::abs(a.probs[i] - b.probs[i]) < 1e-10);
      }
}

TEST_CASE("chain moments") {
  MomentTable t = chain_moments_rational(S2, 5);
  CHECK(*t.rows[2].mean_exact == Rational(23, 18));
  CHECK(*t.rows[2].var_exact == Rational(361, 1620));
  CHECK(*t.rows[0].mean_exact == 1);
  CHECK(chain_mean_altsum(2, 3) == Rational(23, 18));
  CHECK(chain_mean_altsum(2, 1) == 1);
  for (long n = 1; n <= 30; ++n) CHECK(chain_mean_altsum(3, n) == *chain_moments_rational(S3, n).rows.back().mean_exact);
  MomentTable big = chain_moments_exact(S2, 2000);
  for (long n : {1L, 10L, 500L, 2000L}) {
    const auto& r = big.rows[static_cast<std::size_t>(n - 1)];
    CHECK(r.mean == doctest::Approx((H(n) + 2) / 3).epsilon(1e-12));
    CHECK(r.mean == doctest::Approx(closed_form_d2(ClosedFormD2::SimplexChainMean, n)).epsilon(1e-12));
    CHECK(r.var == doctest::Approx(closed_form_d2(ClosedFormD2::SimplexChainVariance, n)).epsilon(1e-9));
  }
  MomentTable cube = chain_moments_exact(C2, 300);
  for (long n : {1L, 7L, 300L}) {
    const auto& r = cube.rows[static_cast<std::size_t>(n - 1)];
    CHECK(r.mean == doctest::Approx((H(n) + 1) / 2).epsilon(1e-12));
    CHECK(std::abs(r.var - (H(n) + H(n, 2) - 2) / 4) < 1e-12);
  }
  CHECK(closed_form_d2(ClosedFormD2::CubeChainMean, 1) == doctest::Approx(1.0));
  CHECK(std::abs(closed_form_d2(ClosedFormD2::CubeChainVariance, 1)) < 1e-15);
  CHECK(std::abs(closed_form_d2(ClosedFormD2::SimplexChainVariance, 1)) < 1e-12);
  CHECK_THROWS_AS(chain_moments_exact(S2, kChainRecurrenceLimit + 1), DomainError);
}

TEST_CASE("probability generating function") {
  for (double y : {0.0, 0.3, 2.0}) {
    PgfValue p = chain_pgf(S2, 2, y);
    CHECK(p.exact);
    CHECK(p.value == doctest::Approx(1 + (y - 1) * (1 + y / 6)).epsilon(1e-14));
  }
  CHECK(chain_pgf(S2, 40, 1.0).value == doctest::Approx(1.0));
  Rational h(1, 1000000);
  Rational d = (chain_pgf_exact(S2, 2, 1 + h) - chain_pgf_exact(S2, 2, 1 - h)) / (2 * h);
  CHECK(d == Rational(7, 6));
}

TEST_CASE("phi product") {
  PhiForms p = phi_product(2, 2);
  CHECK(p.product == doctest::Approx(5.0 / 6).epsilon(1e-15));
  CHECK(p.gamma_form == doctest::Approx(5.0 / 6).epsilon(1e-13));
  for (int d : {2, 3, 6}) {
    CHECK(phi_product(d, 1).product == 1.0);
    PhiForms q = phi_product(d, 1000);
    CHECK(std::abs(q.product - q.gamma_form) <= 1e-10 * std::abs(q.product));
  }
}

TEST_CASE("dominating records") {
  for (const Model& m : {S2, S3, C2}) {
    DomMoments one = dom_moments(m, 1);
    CHECK(one.mean == 1.0);
    CHECK(one.var == 0.0);
  }
  DomMoments c = dom_moments(C2, 3);
  CHECK(*c.mean_exact == Rational(49, 36));
  CHECK(c.var == doctest::Approx(H(3, 2) - H(3, 4)).epsilon(1e-14));
  CHECK(c.var == doctest::Approx(0.286265432098765).epsilon(1e-12));
  DomMoments s = dom_moments(S2, 1000000);
  CHECK(s.mean == doctest::Approx(pi * pi / 8).epsilon(1e-12));
  CHECK(s.var == doctest::Approx(0.219022518531977).epsilon(1e-11));
  MomentTable t = dom_moment_table(S2, 10);
  CHECK(t.rows.size() == 10);
  CHECK(t.rows[9].mean == doctest::Approx(dom_moments(S2, 10).mean).epsilon(1e-15));
}

TEST_CASE("hypercube maxima means") {
  CHECK(cube_maxima_mean(1, 50) == 1.0);
  CHECK(cube_maxima_mean(2, 10) == doctest::Approx(H(10)).epsilon(1e-15));
  // E_3(3) = 1 + (1 + 1/2)/2 + (1 + 1/2 + 1/3)/3
  CHECK(cube_maxima_mean(3, 3) == doctest::Approx(1 + 0.75 + 11.0 / 18).epsilon(1e-15));
}

TEST_CASE("record recurrence") {
  RecurrenceSolution z = solve_record_recurrence(2, [](long) { return 0.0; }, 20);
  for (double a : z.kernel) CHECK(a == 0.0);
  RecurrenceSolution one = solve_record_recurrence(2, [](long n) { return n >= 1 ? 1.0 : 0.0; }, 25);
  for (long n = 1; n <= 25; ++n) {
    CHECK(one.kernel[static_cast<std::size_t>(n)] == doctest::Approx((H(n) + 2) / 3).epsilon(1e-12));
    CHECK(one.alternating[static_cast<std::size_t>(n)] ==
          doctest::Approx(one.kernel[static_cast<std::size_t>(n)]).epsilon(1e-10));
  }
}

TEST_CASE("moment table output") {
  MomentTable t = chain_moments_rational(S2, 3);
  std::string csv = moment_table_csv(t);
  CHECK(csv.find("n,mean,var,mean_exact,var_exact\n") == 0);
  CHECK(csv.find("3,1.27777777777778,0.22283950617284,23/18,361/1620") != std::string::npos);
  CHECK(moment_table_json(t).find("\"23/18\"") != std::string::npos);
  CHECK(rational_string(Rational(-4, 6)) == "-2/3");
  CHECK(rational_string(Rational(5)) == "5");
}
