#include "recordlab/error.hpp"
#include "recordlab/geometry.hpp"
#include "recordlab/montecarlo.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace recordlab;

namespace {
const Point p1{-3.5, 5.5}, p2{-1, 3}, p3{-1.5, 7}, p4{-2, 4.5}, p7{1.5, 8};
}

TEST_CASE("dominance on the example points") {
  CHECK(dominates(p7, p3));
  CHECK_FALSE(dominates(p2, p4));
  CHECK_FALSE(dominates(p3, p3));
  CHECK_THROWS_AS(dominates(Point{1, 2}, Point{1, 2, 3}), DomainError);
}

TEST_CASE("join is the coordinatewise maximum") {
  CHECK(join(Point{1, 0}, Point{0, 1}) == Point{1, 1});
  CHECK(join(p1, p1) == p1);
  CHECK(join(p1, p2) == Point{-1, 5.5});
  CHECK_THROWS_AS(join(Point{1}, Point{1, 2}), DomainError);
}

TEST_CASE("random order properties") {
  RngStream rng(7, 0);
  const Model m(ModelKind::Hypercube, 3);
  for (int t = 0; t < 2000; ++t) {
    Point p = sample_point(m, rng), q = sample_point(m, rng), r = sample_point(m, rng);
    if (dominates(p, q) && dominates(q, r)) CHECK(dominates(p, r));
    CHECK(join(p, q) == join(q, p));
    CHECK(join(join(p, q), r) == join(p, join(q, r)));
    Point j = join(p, q);
    std::vector<double> lifted(j.coords().begin(), j.coords().end());
    for (double& x : lifted) x += 1e-12;
    CHECK(dominates(Point(lifted), p));
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(Model(ModelKind::Simplex, 0), DomainError);
  CHECK(parse_model_kind("cube") == ModelKind::Hypercube);
  CHECK(parse_model_kind("simplex") == ModelKind::Simplex);
  CHECK_THROWS_AS(parse_model_kind("ball"), DomainError);
}

TEST_CASE("samples stay inside their region") {
  RngStream rng(kDefaultSeed, 3);
  for (int d : {1, 2, 5, 12}) {
    const Model s(ModelKind::Simplex, d), h(ModelKind::Hypercube, d);
    for (int t = 0; t < 5000; ++t) {
      Point p = sample_point(s, rng);
      CHECK(p.dim() == d);
      for (double x : p.coords()) CHECK(x >= 0.0);
      CHECK(p.norm1() <= 1.0);
      Point q = sample_point(h, rng);
      for (double x : q.coords()) CHECK((x >= 0.0 && x < 1.0));
    }
  }
}

TEST_CASE("one-dimensional simplex is uniform") {
  RngStream rng(11, 0);
  const Model m(ModelKind::Simplex, 1);
  std::vector<double> xs(100000);
  for (double& x : xs) x = sample_point(m, rng)[0];
  std::sort(xs.begin(), xs.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double n = static_cast<double>(xs.size());
    ks = std::max({ks, std::abs((i + 1) / n - xs[i]), std::abs(i / n - xs[i])});
  }
  CHECK(ks < 0.01);
}

TEST_CASE("cube mass of the simplex is 1/d!") {
  RngStream rng(13, 0);
  const Model m(ModelKind::Hypercube, 3);
  const long draws = 1000000;
  long inside = 0;
  for (long t = 0; t < draws; ++t) inside += sample_point(m, rng).norm1() <= 1.0 ? 1 : 0;
  const double p = 1.0 / 6.0, se = std::sqrt(p * (1 - p) / draws);
  CHECK(std::abs(static_cast<double>(inside) / draws - p) < 4 * se);
}

TEST_CASE("streams are reproducible and seekable") {
  RngStream a(42, 5), b(42, 5), c(42, 6);
  std::vector<std::uint64_t> xs, ys;
  for (int i = 0; i < 100; ++i) {
    xs.push_back(a.next_u64());
    ys.push_back(b.next_u64());
  }
  CHECK(xs == ys);
  CHECK(c.next_u64() != xs[0]);
  a.seek(10);
  CHECK(a.next_u64() == xs[10]);
  RngStream u(1, 1);
  for (int i = 0; i < 10000; ++i) {
    double x = u.next_uniform(), y = u.next_open_uniform();
    CHECK((x >= 0.0 && x < 1.0));
    CHECK((y > 0.0 && y <= 1.0));
    CHECK(u.next_exponential() > 0.0);
  }
}
