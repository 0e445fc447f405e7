#include "recordlab/error.hpp"
#include "recordlab/montecarlo.hpp"
#include "recordlab/specfun.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <vector>

using namespace recordlab;

namespace {
const StatRow& row(const ExperimentReport& r, Statistic s, long n) {
  for (const StatRow& x : r.rows)
    if (x.statistic == s && x.n == n) return x;
  throw std::logic_error("row not found");
}
}  // namespace

TEST_CASE("one-dimensional sanity") {
  ExperimentConfig c;
  c.model = Model(ModelKind::Simplex, 1);
  c.ns = {100};
  c.reps = 4000;
  c.statistics = {Statistic::Pareto, Statistic::Chain, Statistic::Dominating};
  ExperimentReport r = run_experiment(c);
  const double h = specfun::harmonic_value(100, 1);
  for (Statistic s : c.statistics) {
    const StatRow& x = row(r, s, 100);
    CHECK(std::abs(x.mean - h) < 4 * x.se_mean);
    REQUIRE(x.exact_mean);
    CHECK(*x.exact_mean == doctest::Approx(h));
  }
}

TEST_CASE("deterministic across thread counts") {
  ExperimentConfig c;
  c.model = Model(ModelKind::Hypercube, 3);
  c.ns = {50, 200};
  c.reps = 300;
  c.threads = 1;
  c.keep_tallies = true;
  ExperimentReport a = run_experiment(c);
  c.threads = 3;
  ExperimentReport b = run_experiment(c);
  CHECK(report_json(a) == report_json(b));
  CHECK(tallies_csv(a) == tallies_csv(b));
  CHECK(a.tallies.size() == 300);
  CHECK(a.sorted_ns == std::vector<long>{50, 200});
  c.seed = 99;
  CHECK(report_json(run_experiment(c)) != report_json(a));
}

TEST_CASE("mean and variance against exact tables") {
  ExperimentConfig c;
  c.model = Model(ModelKind::Simplex, 2);
  c.ns = {100, 1000};
  c.reps = 3000;
  c.statistics = {Statistic::Chain, Statistic::Dominating};
  ExperimentReport r = run_experiment(c);
  for (const StatRow& x : r.rows) {
    REQUIRE(x.z_mean);
    CHECK(std::abs(*x.z_mean) < 4);
    CHECK(std::abs(*x.z_var) < 4);
    CHECK(x.reference == "exact");
  }
}

TEST_CASE("point cap truncates replications") {
  ExperimentConfig c;
  c.ns = {1000};
  c.reps = 100;
  c.max_points = 50000;
  ExperimentReport r = run_experiment(c);
  CHECK(r.partial);
  CHECK(r.reps_done == 50);
  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["partial"] == true);
}

TEST_CASE("normality distance") {
  RngStream rng(3, 0);
  std::vector<double> xs(100000);
  for (double& x : xs) {
    double u = rng.next_open_uniform(), v = rng.next_uniform();
    x = std::sqrt(-2 * std::log(u)) * std::cos(2 * M_PI * v);
  }
  CHECK(ks_normal(xs) <= 0.01);
  CHECK(ks_normal(xs, 0.0, 1.0) <= 0.01);
  std::vector<double> flat(200, 3.0);
  CHECK(ks_normal(flat) == 0.5);
  CHECK_THROWS(ks_normal(flat, 3.0, 0.0));
  std::vector<double> few(10, 1.0);
  CHECK_THROWS(ks_normal(few));
}

TEST_CASE("kernel law of the recursion index") {
  ChiSquareResult a = kernel_chi_square(Model(ModelKind::Simplex, 2), 20, 20000);
  CHECK(a.p_value > 1e-3);
  ChiSquareResult b = kernel_chi_square(Model(ModelKind::Hypercube, 3), 15, 20000);
  CHECK(b.p_value > 1e-3);
  CHECK(b.observed.size() == b.expected.size());
}

TEST_CASE("pareto mean equals the averaged maxima") {
  MeanRelation one = mean_relation_check(Model(ModelKind::Simplex, 1), 40, 2000);
  CHECK(std::abs(one.z) < 4);
  MeanRelation two = mean_relation_check(Model(ModelKind::Simplex, 2), 100, 10000);
  CHECK(std::abs(two.difference) <= 4 * two.se);
  MeanRelation three = mean_relation_check(Model(ModelKind::Simplex, 3), 50, 10000);
  CHECK(std::abs(three.difference) <= 4 * three.se);
  CHECK_THROWS(mean_relation_check(Model(ModelKind::Simplex, 2), 500, 10));
}

TEST_CASE("report formats") {
  ExperimentConfig c;
  c.ns = {30};
  c.reps = 200;
  ExperimentReport r = run_experiment(c);
  std::string csv = report_csv(r);
  CHECK(csv.find("statistic,n,reps,mean,var") == 0);
  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["rows"].size() == 4);
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(nlohmann::json::parse(report_json(r, true)).contains("wall_seconds"));
  CHECK(tallies_csv(r).rfind("rep,n,", 0) == 0);
}
