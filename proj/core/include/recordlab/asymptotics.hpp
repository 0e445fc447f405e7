#pragma once

#include "recordlab/exactlaws.hpp"
#include "recordlab/geometry.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace recordlab {

/// coefficient · n^exponent, times log n when `log` is set.
struct AsymTerm {
  double coefficient = 0.0;
  double exponent = 0.0;
  bool log = false;
};

/// Size of what the truncated formula leaves out. Unknown constants are never
/// guessed; the formula is returned as is together with this class.
enum class ErrorClass {
  InvPowerD,     // O(n^{−1/d})
  LittleO,       // o(leading term)
  PowerEps,      // O(n^{−ε}) with ε unspecified
  Exponential,   // partial sums converge at an exponential rate
  Exact,
};
std::string to_string(ErrorClass e);

struct AsymptoticMoment {
  double n = 0.0;
  double value = 0.0;
  std::vector<AsymTerm> terms;  // ordered by (exponent, log) strictly decreasing
  ErrorClass error = ErrorClass::InvPowerD;
};

/// Simplex Pareto records: Σ_{j≤d−2} binom(d−1,j)(−1)^jΓ((j+1)/d)·d/(d−1−j)·n^{(d−1−j)/d} + (−1)^{d−1}(log n + γ).
AsymptoticMoment pareto_mean_asym(int d, double n);
/// Simplex maxima: Σ_{j<d} binom(d−1,j)(−1)^jΓ((j+1)/d)·n^{(d−1−j)/d}.
AsymptoticMoment maxima_mean_asym(int d, double n);

/// Chain-record CLT parameters. Simplex: mean H_n·mu + c1, variance H_n·sigma2 + c2.
/// Hypercube: the same with log n in place of H_n.
struct ChainParams {
  int d = 0;
  ModelKind kind = ModelKind::Simplex;
  double mu = 0.0;
  double sigma2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c1_imag = 0.0;  // |Im| left over after conjugate cancellation
  double c2_imag = 0.0;
  double series = 0.0;      // simplex: Σ_j d!P_j(H_{dj+d}−H_{dj})/(P_j−d!)² with P_j = (dj+1)⋯(dj+d)
  double series_err = 0.0;
};

ChainParams chain_params_simplex(int d);
/// Same, with the nontrivial zeros supplied by the caller (any order).
ChainParams chain_params_simplex(int d, std::span<const std::complex<double>> lambdas);
ChainParams chain_params_hypercube(int d);
/// Same, with the nontrivial d-th roots of unity supplied by the caller.
ChainParams chain_params_hypercube(int d, std::span<const std::complex<double>> roots);

/// H_x = ψ(x+1) + γ, the harmonic number continued to real x.
double harmonic_real(double x);

AsymptoticMoment chain_mean_asym(const Model& model, double n);
AsymptoticMoment chain_var_asym(const Model& model, double n);

struct DomLimits {
  int d = 0;
  bool simplex_diverges = false;  // d = 1: E[Z_n] = H_n
  double simplex_mean = 0.0;      // lim E[Z_n]
  double simplex_var = 0.0;       // lim V[Z_n]
  long terms = 0;
  bool cube_diverges = false;     // d = 1
  double cube_mean = 0.0;         // ζ(d)
  double cube_var = 0.0;          // ζ(d) − ζ(2d)
  double pair_term = 0.0;         // (d!)²/(2d)!, the leading part of E − 1
  double scale = 0.0;             // √(πd)·4^{−d}
};
DomLimits dom_limits(int d);

/// Leading-order variance of the given statistic. Throws DomainError where the
/// constant is not known in closed form (hypercube Pareto and maxima).
double record_variance_asym(Statistic s, const Model& model, double n);

/// One object per (record type, model) with the leading mean and variance forms.
std::string summary_table_json(int d);

}  // namespace recordlab
