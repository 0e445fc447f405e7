#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace recordlab {

/// Zeros of (z+1)(z+2)⋯(z+d) − d!·y, conjugate-closed. At y = 1 the trivial
/// zero z = 0 is removed, leaving d−1 values. Sorted by real part, then
/// imaginary part.
struct Spectrum {
  int d = 0;
  double y = 1.0;
  std::vector<std::complex<double>> lambdas;
  double max_residual = 0.0;  // max |∏(λ+i)/d! − y|
};

Spectrum char_zeros(int d, double y = 1.0);

/// Exact integer coefficients c₀..c_d of (z+1)⋯(z+d), rendered as decimals.
std::vector<std::string> char_poly_coefficients(int d);

/// The analytic zero λ_d(y) with λ_d(1) = 0.
std::complex<double> dominant_branch(int d, std::complex<double> y);
double dominant_branch(int d, double y);

/// All d zeros at y, labeled by continuation from their sorted order at y0.
std::vector<std::complex<double>> track_branches(int d, double y0, double y, int steps = 200);

/// Coefficients of η, η², η³ in λ_d(e^η).
std::array<double, 3> branch_series_coeffs(int d);

/// Points of |z^{−z}(z+1)^{1+z}| = 1, traced along rays from −1/2; the curve
/// passes through 0 and −1.
std::vector<std::complex<double>> limit_curve(int resolution);
double limit_curve_modulus(std::complex<double> z);

/// Plot data: zeros of each d in [dmin, dmax] at y, normalized by d, followed
/// by limit-curve rows tagged d = 0. Header "d,re,im".
std::string zeros_csv(int dmin, int dmax, double y, int resolution);

}  // namespace recordlab
