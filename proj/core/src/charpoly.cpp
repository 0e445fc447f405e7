#include "recordlab/charpoly.hpp"

#include "recordlab/error.hpp"
#include "recordlab/format.hpp"
#include "recordlab/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace recordlab {

using cplx = std::complex<double>;

namespace {

std::vector<BigInt> rising_coeffs(int d) {
  // (z+1)⋯(z+d) = Σ c_k z^k, unsigned Stirling numbers of the first kind.
  std::vector<BigInt> c{BigInt(1)};
  for (int i = 1; i <= d; ++i) {
    std::vector<BigInt> next(c.size() + 1, BigInt(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k] * i;
      next[k + 1] += c[k];
    }
    c = std::move(next);
  }
  return c;
}

// ∏(1 + z/i) and Σ 1/(z+i): the normalized polynomial and its log-derivative.
struct ProductEval {
  cplx value;
  cplx logderiv;
};

ProductEval eval_product(int d, cplx z) {
  cplx p = 1.0, s = 0.0;
  for (int i = 1; i <= d; ++i) {
    p *= 1.0 + z / static_cast<double>(i);
    s += 1.0 / (z + static_cast<double>(i));
  }
  return {p, s};
}

double residual(int d, cplx z, cplx y) { return std::abs(eval_product(d, z).value - y); }

// Newton on ∏(1+z/i) − y, or on its quotient by z when the zero z = 0 is
// deflated; returns false if it failed to settle.
bool newton_polish(int d, cplx& z, cplx y, bool deflate0 = false, int max_iter = 80) {
  for (int it = 0; it < max_iter; ++it) {
    ProductEval e = eval_product(d, z);
    cplx deriv = e.value * e.logderiv;
    if (deriv == 0.0) return false;
    cplx step = (e.value - y) / deriv;
    if (deflate0) {
      if (z == 0.0) return false;
      step = step / (1.0 - step / z);
    }
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return true;
  }
  return residual(d, z, y) <= 1e-12;
}

// Aberth–Ehrlich simultaneous iteration; keeps approximations apart.
void aberth(int d, std::vector<cplx>& z, cplx y, bool deflate0) {
  for (int it = 0; it < 500; ++it) {
    double worst = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      ProductEval e = eval_product(d, z[k]);
      cplx ratio = (e.value - y) / (e.value * e.logderiv);
      cplx repulse = deflate0 ? 1.0 / z[k] : cplx(0.0);
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) repulse += 1.0 / (z[k] - z[j]);
      cplx step = ratio / (1.0 - ratio * repulse);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (worst < 1e-15) return;
  }
}

bool distinct(const std::vector<cplx>& z) {
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) < 1e-8 * std::max(1.0, std::abs(z[i]))) return false;
  return true;
}

void sort_spectrum(std::vector<cplx>& z) {
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

// Real y: zeros without a close conjugate partner are real; pair the rest exactly.
void symmetrize(int d, std::vector<cplx>& z, double y) {
  const bool deflate0 = y == 1.0;
  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const double tol = 1e-7 * std::max(1.0, std::abs(z[i]));
    std::size_t best = z.size();
    double bestd = 1e300;
    if (std::abs(z[i].imag()) > tol) {
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (used[j]) continue;
        double dist = std::abs(z[j] - std::conj(z[i]));
        if (dist < bestd) {
          bestd = dist;
          best = j;
        }
      }
    }
    if (best == z.size() || bestd > tol) {
      z[i] = cplx(z[i].real(), 0.0);
      newton_polish(d, z[i], y, deflate0);
      z[i] = cplx(z[i].real(), 0.0);
      continue;
    }
    if (z[i].imag() < 0) z[i] = std::conj(z[i]);
    z[best] = std::conj(z[i]);
    used[best] = true;
  }
}

std::vector<cplx> all_zeros(int d, cplx y, bool drop_zero) {
  std::vector<BigInt> c = rising_coeffs(d);
  std::vector<double> a(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) a[k] = c[k].convert_to<double>();
  const double dfact = a[0];
  // c₀ − d!·y; keep the exact zero at y = 1.
  std::vector<cplx> coeff(a.begin(), a.end());
  coeff[0] = (y == 1.0) ? cplx(0.0) : dfact * (1.0 - y);
  if (drop_zero) coeff.erase(coeff.begin());
  const int n = static_cast<int>(coeff.size()) - 1;
  if (n == 0) return {};

  // Monic polynomial in w = z/d keeps the companion entries of moderate size.
  const double lead = coeff[static_cast<std::size_t>(n)].real();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int k = 0; k < n; ++k)
    comp(k, n - 1) = -coeff[static_cast<std::size_t>(k)] / lead * std::pow(static_cast<double>(d), k - n);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericError("char_zeros: eigenvalue iteration failed");

  std::vector<cplx> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = es.eigenvalues()[k] * static_cast<double>(d);
  bool ok = true;
  for (cplx& r : z) ok = newton_polish(d, r, y, drop_zero) && ok;
  if (!ok || !distinct(z)) {
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = es.eigenvalues()[k] * static_cast<double>(d);
    aberth(d, z, y, drop_zero);
    for (cplx& r : z) newton_polish(d, r, y, drop_zero);
  }
  return z;
}

}  // namespace

std::vector<std::string> char_poly_coefficients(int d) {
  if (d < 1) throw DomainError("char_poly_coefficients: d must be at least 1");
  std::vector<std::string> out;
  for (const BigInt& c : rising_coeffs(d)) out.push_back(c.str());
  return out;
}

Spectrum char_zeros(int d, double y) {
  if (d < 2) throw DomainError("char_zeros: d must be at least 2");
  if (!(y > 0.0)) throw DomainError("char_zeros: y must be positive");
  Spectrum s;
  s.d = d;
  s.y = y;
  s.lambdas = all_zeros(d, y, y == 1.0);
  symmetrize(d, s.lambdas, y);
  sort_spectrum(s.lambdas);
  for (cplx z : s.lambdas) s.max_residual = std::max(s.max_residual, residual(d, z, y));
  if (s.max_residual > 1e-10 || !distinct(s.lambdas)) {
    std::ostringstream os;
    os << "char_zeros: root polishing failed for d=" << d << ", residual " << s.max_residual;
    throw NumericError(os.str(), s.max_residual);
  }
  return s;
}

std::array<double, 3> branch_series_coeffs(int d) {
  if (d < 2) throw DomainError("branch_series_coeffs: d must be at least 2");
  using specfun::harmonic_exact;
  Rational h1 = harmonic_exact(d, 1), h2 = harmonic_exact(d, 2), h3 = harmonic_exact(d, 3);
  Rational c1 = 1 / h1;
  Rational c2 = h2 / (2 * h1 * h1 * h1);
  Rational c3 = -(2 * h1 * h3 - 3 * h2 * h2) / (6 * h1 * h1 * h1 * h1 * h1);
  return {c1.convert_to<double>(), c2.convert_to<double>(), c3.convert_to<double>()};
}

cplx dominant_branch(int d, cplx y) {
  if (d < 1) throw DomainError("dominant_branch: d must be at least 1");
  if (std::abs(y - 1.0) > 0.5) throw DomainError("dominant_branch: requires |y - 1| <= 1/2");
  if (y == 1.0) return 0.0;
  cplx eta = std::log(y);
  cplx z;
  if (d == 1) {
    z = y - 1.0;
  } else {
    auto c = branch_series_coeffs(d);
    z = eta * (c[0] + eta * (c[1] + eta * c[2]));
  }
  const cplx seed = z;
  for (int it = 0; it < 100; ++it) {
    ProductEval e = eval_product(d, z);
    cplx step = (e.value - y) / (e.value * e.logderiv);
    z -= step;
    if (!std::isfinite(std::abs(z))) break;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) {
      if (std::abs(z - seed) > 0.5 * std::max(1.0, std::abs(seed)))
        throw NumericError("dominant_branch: Newton left the dominant branch");
      return z;
    }
  }
  if (std::isfinite(std::abs(z)) && residual(d, z, y) <= 1e-13) return z;
  throw NumericError("dominant_branch: Newton iteration diverged");
}

double dominant_branch(int d, double y) { return dominant_branch(d, cplx(y, 0.0)).real(); }

std::vector<cplx> track_branches(int d, double y0, double y, int steps) {
  if (d < 2) throw DomainError("track_branches: d must be at least 2");
  if (!(y0 > 0.0) || !(y > 0.0)) throw DomainError("track_branches: y must be positive");
  if (steps < 1) throw DomainError("track_branches: steps must be positive");
  std::vector<cplx> z = all_zeros(d, y0, false);
  sort_spectrum(z);
  for (int s = 1; s <= steps; ++s) {
    double ys = y0 + (y - y0) * s / steps;
    for (cplx& r : z) newton_polish(d, r, ys);
    if (!distinct(z)) throw NumericError("track_branches: branches collided; use more steps");
  }
  return z;
}

double limit_curve_modulus(cplx z) {
  auto xlogx = [](cplx w) { return std::abs(w) == 0.0 ? cplx(0.0) : w * std::log(w); };
  return std::exp((xlogx(z + 1.0) - xlogx(z)).real());
}

namespace {

double curve_f(cplx w) {
  auto xlogx = [](cplx v) { return std::abs(v) == 0.0 ? cplx(0.0) : v * std::log(v); };
  return (xlogx(w + 1.0) - xlogx(w)).real();
}

}  // namespace

std::vector<cplx> limit_curve(int resolution) {
  if (resolution < 2) throw DomainError("limit_curve: resolution must be at least 2");
  const cplx center(-0.5, 0.0);
  std::vector<cplx> upper;
  for (int k = 0; k < resolution; ++k) {
    double theta = std::numbers::pi * k / (resolution - 1);
    cplx dir = std::polar(1.0, theta);
    // f(−1/2) = −ln 2 < 0; step outward to the first sign change.
    double lo = 0.0, hi = 0.05;
    while (curve_f(center + hi * dir) <= 0.0) {
      lo = hi;
      hi += 0.05;
      if (hi > 10.0) throw NumericError("limit_curve: no crossing along ray");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      double mid = 0.5 * (lo + hi);
      if (curve_f(center + mid * dir) <= 0.0)
        lo = mid;
      else
        hi = mid;
    }
    cplx p = center + 0.5 * (lo + hi) * dir;
    if (k == 0 || k == resolution - 1) p = cplx(p.real(), 0.0);
    upper.push_back(p);
  }
  std::vector<cplx> out = upper;
  for (auto it = upper.rbegin(); it != upper.rend(); ++it)
    if (it->imag() != 0.0) out.push_back(std::conj(*it));
  return out;
}

std::string zeros_csv(int dmin, int dmax, double y, int resolution) {
  if (dmin < 2 || dmax < dmin) throw DomainError("zeros_csv: need 2 <= dmin <= dmax");
  std::ostringstream os;
  os << "d,re,im\n";
  for (int d = dmin; d <= dmax; ++d) {
    Spectrum s = char_zeros(d, y);
    for (cplx z : s.lambdas)
      os << d << ',' << fmt_num(z.real() / d) << ',' << fmt_num(z.imag() / d) << '\n';
  }
  for (cplx z : limit_curve(resolution)) os << 0 << ',' << fmt_num(z.real()) << ',' << fmt_num(z.imag()) << '\n';
  return os.str();
}

}  // namespace recordlab
