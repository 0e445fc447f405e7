#pragma once

#include "recordlab/montecarlo.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace recordlab::cli {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidateOptions {
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;
};

inline constexpr int kCriterionCount = 10;

CriterionResult check_criterion(int id, const ValidateOptions& opt);
/// Runs the listed criteria (all when empty), printing one line each to `out`.
std::vector<CriterionResult> run_validation(const ValidateOptions& opt, std::span<const int> ids, std::ostream& out);
std::string format_line(const CriterionResult& r);

}  // namespace recordlab::cli
