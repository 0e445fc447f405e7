#include "recordlab/records.hpp"

#include "recordlab/error.hpp"

#include <algorithm>
#include <numeric>

namespace recordlab {

namespace {

int common_dim(std::span<const Point> seq) {
  if (seq.empty()) return 0;
  int d = seq.front().dim();
  for (const Point& p : seq)
    if (p.dim() != d) throw DomainError("all points must have the same dimension");
  return d;
}

void check_size(std::size_t got, int d) {
  if (got != static_cast<std::size_t>(d))
    throw DomainError("dimension mismatch: " + std::to_string(got) + " vs " + std::to_string(d));
}

}  // namespace

DominatingCounter::DominatingCounter(int d) : running_max_(static_cast<std::size_t>(d)) {
  if (d < 1) throw DomainError("dimension must be at least 1");
}

bool DominatingCounter::push(std::span<const double> p) {
  check_size(p.size(), static_cast<int>(running_max_.size()));
  if (empty_) {
    std::copy(p.begin(), p.end(), running_max_.begin());
    empty_ = false;
    ++count_;
    return true;
  }
  bool record = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > running_max_[i])) record = false;
    running_max_[i] = std::max(running_max_[i], p[i]);
  }
  if (record) ++count_;
  return record;
}

ChainCounter::ChainCounter(int d) : top_(static_cast<std::size_t>(d)) {
  if (d < 1) throw DomainError("dimension must be at least 1");
}

bool ChainCounter::push(std::span<const double> p) {
  check_size(p.size(), static_cast<int>(top_.size()));
  if (empty_ || dominates(p, top_)) {
    std::copy(p.begin(), p.end(), top_.begin());
    empty_ = false;
    ++count_;
    return true;
  }
  return false;
}

ParetoCounter::ParetoCounter(int d, FrontStrategy strategy) : d_(d) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (strategy == FrontStrategy::Staircase && d != 2)
    throw DomainError("staircase front requires d = 2");
  staircase_ = strategy == FrontStrategy::Staircase || (strategy == FrontStrategy::Auto && d == 2);
}

void ParetoCounter::clear() {
  flat_.clear();
  stairs_.clear();
  count_ = 0;
}

long ParetoCounter::front_size() const {
  return staircase_ ? static_cast<long>(stairs_.size()) : static_cast<long>(flat_.size()) / d_;
}

bool ParetoCounter::is_dominated(std::span<const double> p) const {
  check_size(p.size(), d_);
  if (staircase_) {
    // The first point with larger x has the largest y among those.
    auto it = stairs_.upper_bound(p[0]);
    return it != stairs_.end() && it->second > p[1];
  }
  const std::size_t d = static_cast<std::size_t>(d_);
  for (std::size_t off = 0; off < flat_.size(); off += d)
    if (dominates(std::span<const double>(flat_.data() + off, d), p)) return true;
  return false;
}

bool ParetoCounter::push(std::span<const double> p) {
  check_size(p.size(), d_);
  if (staircase_) {
    auto it = stairs_.upper_bound(p[0]);
    if (it != stairs_.end() && it->second > p[1]) return false;
    // Points left of p with smaller y form a contiguous run just before it.
    auto pos = stairs_.lower_bound(p[0]);
    while (pos != stairs_.begin()) {
      auto prev = std::prev(pos);
      if (prev->first < p[0] && prev->second < p[1])
        stairs_.erase(prev);
      else
        break;
    }
    stairs_.emplace(p[0], p[1]);
    ++count_;
    return true;
  }
  const std::size_t d = static_cast<std::size_t>(d_);
  // In an antichain nothing can both dominate p and be dominated by p, so
  // eviction and the dominance test share one scan.
  std::size_t off = 0;
  while (off < flat_.size()) {
    std::span<const double> q(flat_.data() + off, d);
    if (dominates(q, p)) return false;
    if (dominates(p, q)) {
      std::size_t last = flat_.size() - d;
      if (off != last) std::copy_n(flat_.begin() + static_cast<long>(last), d, flat_.begin() + static_cast<long>(off));
      flat_.resize(last);
      continue;
    }
    off += d;
  }
  flat_.insert(flat_.end(), p.begin(), p.end());
  ++count_;
  return true;
}

RecordTally count_dominating(std::span<const Point> seq, bool keep_indices) {
  RecordTally t;
  t.n = static_cast<long>(seq.size());
  if (seq.empty()) return t;
  DominatingCounter c(common_dim(seq));
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (c.push(seq[i].coords()) && keep_indices) t.dominating_indices.push_back(static_cast<long>(i) + 1);
  t.dominating_count = c.count();
  return t;
}

RecordTally count_chain(std::span<const Point> seq, bool keep_indices) {
  RecordTally t;
  t.n = static_cast<long>(seq.size());
  if (seq.empty()) return t;
  ChainCounter c(common_dim(seq));
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (c.push(seq[i].coords()) && keep_indices) t.chain_indices.push_back(static_cast<long>(i) + 1);
  t.chain_count = c.count();
  return t;
}

RecordTally count_pareto(std::span<const Point> seq, bool keep_indices, FrontStrategy strategy) {
  RecordTally t;
  t.n = static_cast<long>(seq.size());
  if (seq.empty()) return t;
  ParetoCounter c(common_dim(seq), strategy);
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (c.push(seq[i].coords()) && keep_indices) t.pareto_indices.push_back(static_cast<long>(i) + 1);
  t.pareto_count = c.count();
  t.maxima_count = c.front_size();
  return t;
}

RecordTally count_records(std::span<const Point> seq, bool keep_indices) {
  RecordTally t = count_pareto(seq, keep_indices);
  RecordTally c = count_chain(seq, keep_indices);
  RecordTally dm = count_dominating(seq, keep_indices);
  t.chain_count = c.chain_count;
  t.chain_indices = std::move(c.chain_indices);
  t.dominating_count = dm.dominating_count;
  t.dominating_indices = std::move(dm.dominating_indices);
  return t;
}

long count_maxima(std::span<const Point> points) {
  if (points.empty()) return 0;
  const int d = common_dim(points);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a][0] > points[b][0]; });
  if (d == 1) {
    double top = points[order.front()][0];
    return static_cast<long>(std::count_if(points.begin(), points.end(), [&](const Point& p) { return p[0] == top; }));
  }
  // Sweep by decreasing first coordinate; a point is maximal iff no point with
  // strictly larger first coordinate dominates it in the remaining ones.
  ParetoCounter front(d - 1);
  long count = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && points[order[j]][0] == points[order[i]][0]) ++j;
    for (std::size_t k = i; k < j; ++k)
      if (!front.is_dominated(points[order[k]].coords().subspan(1))) ++count;
    for (std::size_t k = i; k < j; ++k) front.push(points[order[k]].coords().subspan(1));
    i = j;
  }
  return count;
}

std::vector<Point> lift_to_extended(std::span<const Point> seq) {
  std::vector<Point> out;
  out.reserve(seq.size());
  const double n = static_cast<double>(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::vector<double> c(seq[i].coords().begin(), seq[i].coords().end());
    c.push_back((n + 1.0 - static_cast<double>(i + 1)) / (n + 1.0));
    out.emplace_back(std::move(c));
  }
  return out;
}

}  // namespace recordlab
