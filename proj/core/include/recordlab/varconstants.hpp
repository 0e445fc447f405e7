#pragma once

#include "recordlab/specfun.hpp"

#include <optional>
#include <string>
#include <vector>

namespace recordlab {

enum class ConstantName { V, VTilde, K };
enum class OracleName { I0, Idd, J0, K };

std::string to_string(ConstantName c);
ConstantName parse_constant_name(const std::string& s);

struct NamedValue {
  std::string name;
  specfun::SeriesValue value;
};

/// A constant with the sub-series it is assembled from. `value` is exactly
/// the documented recombination of the component values.
struct ConstantReport {
  int d = 0;
  ConstantName name = ConstantName::V;
  specfun::SeriesValue value;
  std::vector<NamedValue> components;
  std::optional<specfun::SeriesValue> oracle;

  const specfun::SeriesValue& component(const std::string& key) const;
};

struct ConstOptions {
  double eps = 1e-13;
  specfun::Precision precision = specfun::Precision::Double;
  /// Tail treatment of the power-law series: Richardson or HurwitzTail.
  specfun::Acceleration tail = specfun::Acceleration::Richardson;
  bool with_oracle = false;
};

/// v_d: components I0, Idd, C1, C2, C3; v = d/(d−1)·Γ(1/d) + 2d²(C1+C2+C3+Idd−I0).
ConstantReport v_const(int d, const ConstOptions& opt = {});
/// ṽ_d: components J0, Jp{k}, Jpp{k} for k = 1..d−1; ṽ = Γ(1/d) − J0 + Σ binom(d,k)(Jp{k}+Jpp{k}).
ConstantReport vtilde_const(int d, const ConstOptions& opt = {});
/// K_d: components K{m} for m = 0..d−2; K = Σ_m K{m}.
ConstantReport k_const(int d, const ConstOptions& opt = {});

ConstantReport constant(ConstantName name, int d, const ConstOptions& opt = {});

/// Independent quadrature of an integral representation.
specfun::SeriesValue oracle_integral(OracleName name, int d, double eps = 1e-9);

/// I_{d,0} and I_{d,d} by their residue series.
specfun::SeriesValue i_d0_series(int d, const ConstOptions& opt = {});
specfun::SeriesValue i_dd_series(int d, const ConstOptions& opt = {});
/// J_{d,0} by its ₂F₁(·;·;1/2) combination.
specfun::SeriesValue j_d0_series(int d, double eps = 1e-15);

struct ConstantsRow {
  int d = 0;
  std::vector<ConstantReport> reports;  // in the order requested
};
/// CSV with columns d, then <name>, <name>_err, <name>_10 per constant; the
/// _10 column repeats the value rounded to 10 decimals.
std::string constants_csv(const std::vector<ConstantsRow>& rows, const std::vector<ConstantName>& which);

}  // namespace recordlab
