#pragma once

#include "recordlab/geometry.hpp"
#include "recordlab/specfun.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace recordlab {

/// Law of the chain-record recursion index I_n: Y_n = 1 + Y_{I_n}, where I_n
/// counts the later points that dominate the first one.
struct KernelDist {
  long n = 0;
  std::vector<double> probs;  // π_{n,0..n−1}
};

enum class KernelMethod {
  ClosedForm,  // simplex: Γ-ratio sum; hypercube: complete Bell polynomial in harmonic differences
  Quadrature,  // the Beta-type integral of each model, by double-exponential quadrature
};

KernelDist chain_kernel(const Model& model, long n, KernelMethod method = KernelMethod::ClosedForm);
std::vector<Rational> chain_kernel_exact(const Model& model, long n);

enum class Statistic { Pareto, Chain, Dominating, Maxima };
std::string to_string(Statistic s);
Statistic parse_statistic(const std::string& s);

struct MomentRow {
  long n = 0;
  double mean = 0.0;
  double var = 0.0;
  std::optional<Rational> mean_exact;
  std::optional<Rational> var_exact;
};

struct MomentTable {
  Model model;
  Statistic statistic = Statistic::Chain;
  std::vector<MomentRow> rows;  // rows[i].n == i + 1
};

inline constexpr long kChainRecurrenceLimit = 20000;
inline constexpr long kExactRationalLimit = 64;

/// Mean and variance of Y_n for n = 1..n_max from the kernel recurrence.
MomentTable chain_moments_exact(const Model& model, long n_max);
/// Same recurrence carried out in exact rationals.
MomentTable chain_moments_rational(const Model& model, long n_max);

/// Simplex: μ_n as the alternating binomial sum, exactly.
Rational chain_mean_altsum(int d, long n);

struct PgfValue {
  double value = 0.0;
  bool exact = false;  // evaluated in rationals (n ≤ 64)
  bool precision_warning = false;
};
PgfValue chain_pgf(const Model& model, long n, double y);
Rational chain_pgf_exact(const Model& model, long n, const Rational& y);

struct PhiForms {
  double product = 0.0;
  double gamma_form = 0.0;
  double difference = 0.0;
};
PhiForms phi_product(int d, long n);

struct DomMoments {
  double mean = 0.0;
  double var = 0.0;
  std::optional<Rational> mean_exact;
  std::optional<Rational> var_exact;
};
DomMoments dom_moments(const Model& model, long n);
MomentTable dom_moment_table(const Model& model, long n_max);

/// Hypercube maxima: E[M_n] = E_d(n) with E_d(n) = Σ_{k≤n} E_{d−1}(k)/k and E_1 ≡ 1.
/// Pareto records in [0,1]^d have mean E_{d+1}(n).
double cube_maxima_mean(int d, long n);

enum class ClosedFormD2 { SimplexChainMean, SimplexChainVariance, CubeChainMean, CubeChainVariance };
double closed_form_d2(ClosedFormD2 which, long n);

struct RecurrenceSolution {
  std::vector<double> alternating;  // a_0..a_nmax via the binomial-transform iteration
  std::vector<double> kernel;       // a_0..a_nmax via a_n = b_n + Σ π_{n,k} a_k
};
/// Solves a_n = b_n + Σ_k π_{n,k} a_k for the simplex kernel, with a_0 = b(0) = 0.
RecurrenceSolution solve_record_recurrence(int d, const std::function<double(long)>& b, long n_max);

std::string rational_string(const Rational& r);
std::string moment_table_json(const MomentTable& t);
std::string moment_table_csv(const MomentTable& t);

}  // namespace recordlab
