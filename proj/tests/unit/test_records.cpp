#include "recordlab/records.hpp"

#include <doctest.h>

#include <algorithm>
#include <vector>

using namespace recordlab;

namespace {

const std::vector<Point> kFig{{-3.5, 5.5}, {-1, 3}, {-1.5, 7}, {-2, 4.5}, {-5.5, 6.5}, {0.5, 6}, {1.5, 8}, {-4.5, 2}};

std::vector<Point> line(std::initializer_list<double> xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back(Point{x});
  return out;
}

// O(n²) reference counts straight from the definitions.
RecordTally brute(const std::vector<Point>& seq) {
  RecordTally t;
  t.n = static_cast<long>(seq.size());
  std::vector<double> mx;
  const Point* top = nullptr;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const Point& p = seq[k];
    bool par = true;
    for (std::size_t j = 0; j < k; ++j) par = par && !dominates(seq[j], p);
    if (par) t.pareto_indices.push_back(static_cast<long>(k + 1));
    if (!top || dominates(p, *top)) {
      t.chain_indices.push_back(static_cast<long>(k + 1));
      top = &p;
    }
    bool dom = true;
    for (std::size_t j = 0; j < k; ++j) dom = dom && dominates(p, seq[j]);
    if (dom) t.dominating_indices.push_back(static_cast<long>(k + 1));
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < seq.size(); ++j) maximal = maximal && !dominates(seq[j], seq[i]);
    t.maxima_count += maximal ? 1 : 0;
  }
  t.pareto_count = static_cast<long>(t.pareto_indices.size());
  t.chain_count = static_cast<long>(t.chain_indices.size());
  t.dominating_count = static_cast<long>(t.dominating_indices.size());
  return t;
}

bool subset(const std::vector<long>& a, const std::vector<long>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("example sequence") {
  RecordTally t = count_records(kFig);
  CHECK(t.dominating_count == 2);
  CHECK(t.dominating_indices == std::vector<long>{1, 7});
  CHECK(t.chain_count == 3);
  CHECK(t.chain_indices == std::vector<long>{1, 3, 7});
  CHECK(t.pareto_count == 5);
  CHECK(t.pareto_indices == std::vector<long>{1, 2, 3, 6, 7});
  CHECK(t.maxima_count == 1);
  CHECK(count_maxima(kFig) == 1);
  CHECK(count_maxima(lift_to_extended(kFig)) == 5);
}

TEST_CASE("pareto records depend on order, maxima do not") {
  std::vector<Point> rev(kFig.rbegin(), kFig.rend());
  CHECK(count_pareto(rev).pareto_count != count_pareto(kFig).pareto_count);
  CHECK(count_maxima(rev) == count_maxima(kFig));
}

TEST_CASE("small cases") {
  const std::vector<Point> one{{0.3, 0.4}};
  CHECK(count_dominating(one).dominating_count == 1);
  CHECK(count_maxima(lift_to_extended(one)) == 1);
  const std::vector<Point> empty;
  CHECK(count_records(empty).pareto_count == 0);
  CHECK(count_maxima(empty) == 0);
  const std::vector<Point> up{{1, 1}, {2, 2}, {3, 3}};
  CHECK(count_pareto(up).pareto_count == 3);
  CHECK(count_chain(up).chain_count == 3);
  const std::vector<Point> anti{{1, 0}, {0, 1}};
  CHECK(count_maxima(anti) == 2);
  std::vector<Point> d1 = line({0.2, 0.5, 0.3, 0.7});
  RecordTally t = count_records(d1);
  CHECK(t.dominating_count == 3);
  CHECK(t.chain_count == 3);
  CHECK(t.pareto_count == 3);
  CHECK(count_maxima(line({0.9, 0.1, 0.4})) == 1);
}

TEST_CASE("duplicated points are incomparable") {
  const std::vector<Point> dup{{0.5, 0.5}, {0.5, 0.5}};
  CHECK(count_pareto(dup).pareto_count == 2);
  CHECK(count_maxima(dup) == 2);
  CHECK(count_chain(dup).chain_count == 1);
}

TEST_CASE("counters agree with brute force") {
  RngStream rng(2024, 0);
  for (int d = 1; d <= 6; ++d) {
    for (ModelKind kind : {ModelKind::Hypercube, ModelKind::Simplex}) {
      const Model m(kind, d);
      for (int trial = 0; trial < 6; ++trial) {
        std::vector<Point> seq;
        const int n = 50 + 90 * trial;
        for (int i = 0; i < n; ++i) seq.push_back(sample_point(m, rng));
        RecordTally a = count_records(seq), b = brute(seq);
        CHECK(a.pareto_indices == b.pareto_indices);
        CHECK(a.chain_indices == b.chain_indices);
        CHECK(a.dominating_indices == b.dominating_indices);
        CHECK(a.maxima_count == b.maxima_count);
        CHECK(count_maxima(lift_to_extended(seq)) == a.pareto_count);
        CHECK(subset(a.dominating_indices, a.chain_indices));
        CHECK(subset(a.chain_indices, a.pareto_indices));
        CHECK(a.maxima_count <= a.pareto_count);
        if (d == 2) {
          CHECK(count_pareto(seq, true, FrontStrategy::Flat).pareto_indices == a.pareto_indices);
          CHECK(count_pareto(seq, true, FrontStrategy::Staircase).pareto_indices == a.pareto_indices);
        }
        if (d == 1) {
          CHECK(a.pareto_count == a.chain_count);
          CHECK(a.chain_count == a.dominating_count);
        }
      }
    }
  }
}

TEST_CASE("front size tracks prefix maxima") {
  RngStream rng(5, 0);
  const Model m(ModelKind::Simplex, 3);
  std::vector<Point> seq;
  ParetoCounter pc(3);
  for (int i = 0; i < 300; ++i) {
    seq.push_back(sample_point(m, rng));
    pc.push(seq.back().coords());
    if (i % 37 == 0) CHECK(pc.front_size() == count_maxima(seq));
  }
  CHECK(pc.count() == count_pareto(seq).pareto_count);
}
