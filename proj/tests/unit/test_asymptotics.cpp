#include "recordlab/asymptotics.hpp"
#include "recordlab/error.hpp"
#include "recordlab/specfun.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <numbers>

using namespace recordlab;
using std::numbers::egamma;
using std::numbers::pi;

TEST_CASE("pareto and maxima means") {
  CHECK(pareto_mean_asym(1, 1e6).value == doctest::Approx(std::log(1e6) + egamma).epsilon(1e-15));
  CHECK(pareto_mean_asym(2, 1e4).value == doctest::Approx(2 * std::sqrt(pi) * 100 - std::log(1e4) - egamma).epsilon(1e-14));
  CHECK(pareto_mean_asym(2, 1e4).value == doctest::Approx(344.703214144226).epsilon(1e-13));
  CHECK(maxima_mean_asym(1, 1e4).value == 1.0);
  CHECK(maxima_mean_asym(2, 1e4).value == doctest::Approx(std::sqrt(pi) * 100 - 1).epsilon(1e-14));
  AsymptoticMoment p3 = pareto_mean_asym(3, 1e6);
  REQUIRE(p3.terms.size() >= 3);
  CHECK(p3.terms[0].exponent == doctest::Approx(2.0 / 3));
  CHECK(p3.terms[0].coefficient == doctest::Approx(1.5 * std::tgamma(1.0 / 3)).epsilon(1e-14));
  CHECK(p3.terms[2].log);
  double sum = 0;
  for (const AsymTerm& t : p3.terms) sum += t.coefficient * std::pow(1e6, t.exponent) * (t.log ? std::log(1e6) : 1.0);
  CHECK(sum == doctest::Approx(p3.value).epsilon(1e-14));
  CHECK(p3.error == ErrorClass::InvPowerD);
}

TEST_CASE("chain parameters, simplex") {
  ChainParams p = chain_params_simplex(2);
  CHECK(p.mu == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(p.sigma2 == doctest::Approx(5.0 / 27).epsilon(1e-15));
  CHECK(p.c1 == doctest::Approx(2.0 / 3).epsilon(1e-13));
  CHECK(std::abs(p.c2 - (5 * pi * pi / 54 - 26.0 / 27)) < 1e-10);
  ChainParams q = chain_params_simplex(3);
  CHECK(q.mu == doctest::Approx(2.0 / 11).epsilon(1e-15));
  CHECK(q.sigma2 == doctest::Approx(98.0 / 1331).epsilon(1e-14));
  for (int d = 2; d <= 12; ++d) {
    ChainParams r = chain_params_simplex(d);
    CHECK(r.c1_imag <= 1e-12);
    CHECK(r.c2_imag <= 1e-12);
  }
  // Against long exact tables: Y_n mean − μH_n → c1.
  MomentTable t = chain_moments_exact(Model(ModelKind::Simplex, 3), 20000);
  const double h = specfun::harmonic_value(20000, 1);
  CHECK(std::abs(t.rows.back().mean - q.mu * h - q.c1) < 1e-3);
  CHECK(std::abs(t.rows.back().var - q.sigma2 * h - q.c2) < 1e-2);
}

TEST_CASE("chain parameters, hypercube") {
  ChainParams p = chain_params_hypercube(2);
  CHECK(p.mu == doctest::Approx(0.5));
  CHECK(std::abs(p.c1 - (1 + egamma) / 2) < 1e-10);
  CHECK(std::abs(p.c2 - (egamma + pi * pi / 6 - 2) / 4) < 1e-10);
  CHECK(p.c2 == doctest::Approx(0.0555374329374397).epsilon(1e-12));
  for (int d = 2; d <= 12; ++d) CHECK(chain_params_hypercube(d).c1_imag <= 1e-12);
  AsymptoticMoment m = chain_mean_asym(Model(ModelKind::Hypercube, 2), 1e6);
  CHECK(m.value == doctest::Approx(0.5 * std::log(1e6) + (1 + egamma) / 2).epsilon(1e-14));
}

TEST_CASE("chain moments in one dimension") {
  const Model m(ModelKind::Simplex, 1);
  CHECK(chain_mean_asym(m, 100).value == doctest::Approx(specfun::harmonic_value(100, 1)).epsilon(1e-14));
  CHECK(chain_var_asym(m, 100).value == doctest::Approx(std::log(100.0) + egamma - pi * pi / 6).epsilon(1e-14));
  CHECK(harmonic_real(3.0) == doctest::Approx(11.0 / 6).epsilon(1e-15));
  CHECK(harmonic_real(0.5) == doctest::Approx(2 - 2 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("dominating limits") {
  DomLimits l = dom_limits(2);
  CHECK(l.simplex_mean == doctest::Approx(pi * pi / 8).epsilon(1e-13));
  CHECK(std::abs(l.simplex_mean - 1.23372) < 1e-4);
  CHECK(std::abs(l.simplex_var - 0.2189) < 2e-4);
  CHECK(l.simplex_var == doctest::Approx(0.219022518531977).epsilon(1e-12));
  CHECK(l.cube_mean == doctest::Approx(pi * pi / 6).epsilon(1e-15));
  CHECK(l.cube_var == doctest::Approx(pi * pi / 6 - std::pow(pi, 4) / 90).epsilon(1e-14));
  CHECK(dom_limits(1).simplex_diverges);
  CHECK(dom_limits(1).cube_diverges);
  double prev = l.simplex_mean - 1;
  for (int d = 3; d <= 12; ++d) {
    DomLimits k = dom_limits(d);
    CHECK(k.simplex_mean - 1 < prev);
    prev = k.simplex_mean - 1;
    CHECK(k.pair_term == doctest::Approx(std::pow(std::tgamma(d + 1.0), 2) / std::tgamma(2 * d + 1.0)).epsilon(1e-13));
  }
  DomLimits l12 = dom_limits(12);
  CHECK(std::abs(l12.simplex_var / l12.scale - 1) < 0.25);
}

TEST_CASE("variance forms") {
  const Model s2(ModelKind::Simplex, 2), c3(ModelKind::Hypercube, 3);
  CHECK(record_variance_asym(Statistic::Pareto, s2, 1e4) == doctest::Approx(286.126354931118).epsilon(1e-12));
  CHECK(record_variance_asym(Statistic::Maxima, s2, 1e4) == doctest::Approx(68.4688927950036).epsilon(1e-12));
  const double n = std::exp(9.0);
  CHECK(record_variance_asym(Statistic::Chain, s2, n) ==
        doctest::Approx(5.0 / 27 * specfun::harmonic_value(8103, 1) + chain_params_simplex(2).c2).epsilon(1e-4));
  CHECK_THROWS_AS(record_variance_asym(Statistic::Pareto, c3, 1e4), DomainError);
  CHECK_THROWS_AS(record_variance_asym(Statistic::Maxima, c3, 1e4), DomainError);
}

TEST_CASE("summary table") {
  auto j = nlohmann::json::parse(summary_table_json(3));
  REQUIRE(j["rows"].size() == 8);
  for (const auto& r : j["rows"]) {
    CHECK(r.contains("record"));
    CHECK(r["mean"].contains("expression"));
  }
}
