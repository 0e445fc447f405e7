#pragma once

#include "recordlab/exactlaws.hpp"
#include "recordlab/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace recordlab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct ExperimentConfig {
  Model model{ModelKind::Simplex, 2};
  std::vector<long> ns{100};
  long reps = 1000;
  std::vector<Statistic> statistics{Statistic::Pareto, Statistic::Chain, Statistic::Dominating, Statistic::Maxima};
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;             // 0: hardware concurrency
  double max_points = 2e10;    // cap on reps·max(n); excess replications are dropped
  bool keep_tallies = false;
};

struct StatRow {
  Statistic statistic = Statistic::Chain;
  long n = 0;
  long reps = 0;
  double mean = 0.0;
  double var = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
  std::optional<double> exact_mean, exact_var;
  std::optional<double> asym_mean, asym_var;
  std::optional<double> z_mean, z_var;  // against exact values when known, else asymptotic
  /// Standardization used for ks: "exact" (exact mean and variance),
  /// "asymptotic-variance" (exact or sample mean with the asymptotic
  /// variance), "sample" (sample moments) or "none".
  std::string reference = "none";
  std::optional<double> ks;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<StatRow> rows;  // statistic-major, n ascending
  long reps_done = 0;
  bool partial = false;
  double wall_seconds = 0.0;
  std::vector<long> sorted_ns;
  /// tallies[rep][c·S + s] for checkpoint c and statistic s, when kept.
  std::vector<std::vector<long>> tallies;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Sup distance between the empirical CDF and Φ after standardizing by the
/// sample mean and variance. A constant sample gives 0.5.
double ks_normal(std::span<const double> samples);
/// Same, standardizing by reference moments; throws unless var > 0.
double ks_normal(std::span<const double> samples, double mean, double var);

struct ChiSquareResult {
  long n = 0;
  long reps = 0;
  double statistic = 0.0;
  int dof = 0;
  double p_value = 0.0;
  std::vector<long> observed;     // pooled bins
  std::vector<double> expected;
};
/// Empirical law of I_n (later points dominating the first) against chain_kernel.
ChiSquareResult kernel_chi_square(const Model& model, long n, long reps, std::uint64_t seed = kDefaultSeed);

struct MeanRelation {
  Model model;
  long n = 0;
  long reps = 0;
  double pareto_mean = 0.0;  // X_n
  double maxima_sum = 0.0;   // Σ_{k≤n} M_k/k
  double difference = 0.0;
  double se = 0.0;
  double z = 0.0;
};
/// E[X_n] = Σ_{k≤n} E[M_k]/k from shared prefixes: M_k is the front size
/// after k points, so both sides come from one pass.
MeanRelation mean_relation_check(const Model& model, long n, long reps, std::uint64_t seed = kDefaultSeed,
                                 int threads = 0);

std::string report_json(const ExperimentReport& r, bool include_timing = false);
std::string report_csv(const ExperimentReport& r);
/// Per-replication tallies: rep, n, then one column per statistic.
std::string tallies_csv(const ExperimentReport& r);

}  // namespace recordlab
