#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace recordlab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace specfun {

using cplx = std::complex<double>;

/// A summed or integrated quantity together with a bound on its absolute error.
struct SeriesValue {
  double value = 0.0;
  double err = 0.0;
  long terms_used = 0;
};

/// Error-free double-double number (hi + lo, |lo| <= ulp(hi)/2).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double x) : hi(x) {}  // NOLINT: implicit widening is intended
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
  DoubleDouble& operator+=(const DoubleDouble& o);
  DoubleDouble& operator-=(const DoubleDouble& o);
  DoubleDouble& operator*=(const DoubleDouble& o);
  DoubleDouble& operator/=(const DoubleDouble& o);
};

DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b);
DoubleDouble operator-(const DoubleDouble& a);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class Precision { Double, DoubleDouble };

cplx ln_gamma(cplx z);
double ln_gamma(double x);  // ln|Γ(x)|, pole at nonpositive integers rejected

/// lnΓ(x+a) − lnΓ(x+b), accurate in absolute terms even when x ≫ |a−b|.
double ln_gamma_ratio(double x, double a, double b);
cplx ln_gamma_ratio(double x, cplx a, cplx b);

/// ψ (m = 0) or ψ′ (m = 1).
cplx polygamma(int m, cplx z);
double polygamma(int m, double x);

double hurwitz_zeta(double s, double a);
inline double zeta(double s) { return hurwitz_zeta(s, 1.0); }

struct Harmonic {
  Rational exact;  // left at 0 when n exceeds exact_limit
  bool has_exact = false;
  double value = 0.0;
};
inline constexpr unsigned long kHarmonicExactLimit = 10000;

Harmonic harmonic(unsigned long n, unsigned a);
double harmonic_value(unsigned long n, unsigned a);
Rational harmonic_exact(unsigned long n, unsigned a);

enum class Acceleration { Auto, Euler, Richardson, HurwitzTail, Direct };

struct SumOptions {
  double eps = 1e-13;
  Acceleration method = Acceleration::Auto;
  /// Exponent s of a power-law tail a_j ~ A·j^{-s}; required by Richardson and
  /// HurwitzTail, estimated from the terms under Auto when left at 0.
  double decay = 0.0;
  long first_index = 0;
  long max_terms = 10'000'000;
  Precision precision = Precision::Double;
};

/// Sum Σ_{j ≥ first_index} term(j). Terms are requested in increasing j
/// order, so stateful generators are allowed.
SeriesValue euler_sum(const std::function<double(long)>& term, const SumOptions& opt = {});

/// Generalized hypergeometric pFq(alphas; betas; z) for real arguments.
SeriesValue p_f_q(std::span<const double> alphas, std::span<const double> betas, double z,
                  double eps = 1e-14);

/// Double-exponential quadrature on [a, b]; b may be +infinity. Breakpoints
/// inside (a, b) split the range before integration.
SeriesValue quad1d(const std::function<double(double)>& f, double a, double b, double eps = 1e-12,
                   std::span<const double> breakpoints = {});

/// Iterated quad1d over [a1,b1]×[a2,b2].
SeriesValue quad2d(const std::function<double(double, double)>& f, double a1, double b1, double a2,
                   double b2, double eps = 1e-10);

double binomial(unsigned n, unsigned k);
BigInt binomial_exact(unsigned n, unsigned k);
BigInt factorial_exact(unsigned n);

}  // namespace specfun
}  // namespace recordlab
