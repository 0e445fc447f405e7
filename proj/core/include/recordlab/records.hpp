#pragma once

#include "recordlab/geometry.hpp"

#include <map>
#include <span>
#include <vector>

namespace recordlab {

/// Record counts for one sequence. Index lists hold 1-based arrival indices
/// and are filled only when requested.
struct RecordTally {
  long n = 0;
  long pareto_count = 0;
  long chain_count = 0;
  long dominating_count = 0;
  long maxima_count = 0;
  std::vector<long> pareto_indices;
  std::vector<long> chain_indices;
  std::vector<long> dominating_indices;
};

// Streaming counters; push() returns whether the arrival is a record.

class DominatingCounter {
 public:
  explicit DominatingCounter(int d);
  bool push(std::span<const double> p);
  long count() const { return count_; }

 private:
  std::vector<double> running_max_;
  long count_ = 0;
  bool empty_ = true;
};

class ChainCounter {
 public:
  explicit ChainCounter(int d);
  bool push(std::span<const double> p);
  long count() const { return count_; }
  std::span<const double> top() const { return top_; }

 private:
  std::vector<double> top_;
  long count_ = 0;
  bool empty_ = true;
};

enum class FrontStrategy {
  Auto,       // staircase for d = 2, flat array otherwise
  Flat,       // linear scan with evict-on-insert
  Staircase,  // d = 2 only: x-sorted staircase with binary search
};

/// Maintains the maxima of the prefix seen so far. front_size() after k
/// arrivals is the number of maxima among the first k points.
class ParetoCounter {
 public:
  explicit ParetoCounter(int d, FrontStrategy strategy = FrontStrategy::Auto);
  bool push(std::span<const double> p);
  bool is_dominated(std::span<const double> p) const;
  long count() const { return count_; }
  long front_size() const;
  void clear();

 private:
  int d_;
  bool staircase_;
  std::vector<double> flat_;              // front points, row-major
  std::multimap<double, double> stairs_;  // x → y, y decreasing in x
  long count_ = 0;
};

RecordTally count_dominating(std::span<const Point> seq, bool keep_indices = true);
RecordTally count_chain(std::span<const Point> seq, bool keep_indices = true);
RecordTally count_pareto(std::span<const Point> seq, bool keep_indices = true,
                         FrontStrategy strategy = FrontStrategy::Auto);
/// All three record types plus the maxima of the whole sequence.
RecordTally count_records(std::span<const Point> seq, bool keep_indices = true);

long count_maxima(std::span<const Point> points);
std::vector<Point> lift_to_extended(std::span<const Point> seq);

}  // namespace recordlab
