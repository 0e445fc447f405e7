#include "recordlab/specfun.hpp"

#include "recordlab/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace recordlab::specfun {

namespace {

constexpr double kEpsMach = std::numeric_limits<double>::epsilon();

// B_2 .. B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,        1.0 / 42.0,      -1.0 / 30.0,      5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,          -3617.0 / 510.0, 43867.0 / 798.0, -174611.0 / 330.0};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Two-sum and two-product error-free transformations.
inline DoubleDouble two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}
inline DoubleDouble quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}
inline DoubleDouble two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

template <class T>
T stirling_ln_gamma(T z) {
  T zinv = 1.0 / z;
  T z2 = zinv * zinv;
  T series = 0.0;
  T pw = zinv;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= z2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

constexpr double kShiftTarget = 15.0;

}  // namespace

// ---- double-double ---------------------------------------------------------

DoubleDouble& DoubleDouble::operator+=(const DoubleDouble& o) {
  DoubleDouble s = two_sum(hi, o.hi);
  DoubleDouble t = two_sum(lo, o.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  *this = quick_two_sum(s.hi, s.lo);
  return *this;
}
DoubleDouble& DoubleDouble::operator-=(const DoubleDouble& o) { return *this += -o; }
DoubleDouble& DoubleDouble::operator*=(const DoubleDouble& o) {
  DoubleDouble p = two_prod(hi, o.hi);
  p.lo += hi * o.lo + lo * o.hi;
  *this = quick_two_sum(p.hi, p.lo);
  return *this;
}
DoubleDouble& DoubleDouble::operator/=(const DoubleDouble& o) {
  double q1 = hi / o.hi;
  DoubleDouble r = *this - o * DoubleDouble(q1);
  double q2 = r.hi / o.hi;
  r -= o * DoubleDouble(q2);
  double q3 = r.hi / o.hi;
  DoubleDouble q = quick_two_sum(q1, q2);
  *this = q + DoubleDouble(q3);
  return *this;
}
DoubleDouble operator+(DoubleDouble a, const DoubleDouble& b) { return a += b; }
DoubleDouble operator-(DoubleDouble a, const DoubleDouble& b) { return a -= b; }
DoubleDouble operator*(DoubleDouble a, const DoubleDouble& b) { return a *= b; }
DoubleDouble operator/(DoubleDouble a, const DoubleDouble& b) { return a /= b; }
DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }

void CompensatedSum::add(double x) {
  double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

// ---- Gamma family ----------------------------------------------------------

cplx ln_gamma(cplx z) {
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
    throw DomainError("ln_gamma: pole at " + fmt(z.real()));
  cplx shift = 0.0;
  while (z.real() < kShiftTarget) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling_ln_gamma(z) - shift;
}

double ln_gamma(double x) {
  if (is_nonpositive_integer(x)) throw DomainError("ln_gamma: pole at " + fmt(x));
  double shift = 0.0;
  while (x < kShiftTarget) {
    shift += std::log(std::abs(x));
    x += 1.0;
  }
  return stirling_ln_gamma(x) - shift;
}

namespace {

template <class T>
T log1p_any(T u) {
  if constexpr (std::is_same_v<T, cplx>) {
    // log1p for complex arguments is not in the standard library.
    return std::abs(u) < 1e-4 ? u * (1.0 - u * (0.5 - u * (1.0 / 3.0 - 0.25 * u)))
                              : std::log(1.0 + u);
  } else {
    return std::log1p(u);
  }
}

// (x+a−½)ln(x+a) − (x+b−½)ln(x+b) − (a−b) + Bernoulli corrections, for large x.
template <class T>
T stirling_ratio(double x, T a, T b) {
  T xa = x + a, xb = x + b;
  T d = a - b;
  T lead = (xa - 0.5) * log1p_any(d / xb) + d * std::log(xb) - d;
  T series = 0.0;
  T ia = 1.0 / xa, ib = 1.0 / xb;
  T pa = ia, pb = ib;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * (pa - pb);
    pa *= ia * ia;
    pb *= ib * ib;
  }
  return lead + series;
}

template <class T>
T ln_gamma_ratio_impl(double x, T a, T b) {
  auto re = [](T v) {
    if constexpr (std::is_same_v<T, cplx>)
      return v.real();
    else
      return v;
  };
  T shift = 0.0;
  int guard = 0;
  while (x + std::min(re(a), re(b)) < 20.0) {
    // lnΓ(x+a) = lnΓ(x+a+1) − ln(x+a)
    shift += log1p_any((a - b) / (x + b));
    x += 1.0;
    if (++guard > 100000) throw DomainError("ln_gamma_ratio: argument too negative");
  }
  return stirling_ratio<T>(x, a, b) - shift;
}

}  // namespace

double ln_gamma_ratio(double x, double a, double b) {
  if (is_nonpositive_integer(x + a) || is_nonpositive_integer(x + b))
    throw DomainError("ln_gamma_ratio: pole");
  if (x + std::min(a, b) <= 0.0) return ln_gamma(x + a) - ln_gamma(x + b);
  return ln_gamma_ratio_impl<double>(x, a, b);
}

cplx ln_gamma_ratio(double x, cplx a, cplx b) {
  if (x + std::min(a.real(), b.real()) <= 0.0) return ln_gamma(x + a) - ln_gamma(x + b);
  return ln_gamma_ratio_impl<cplx>(x, a, b);
}

namespace {

template <class T>
T polygamma_impl(int m, T z) {
  auto re = [](T v) {
    if constexpr (std::is_same_v<T, cplx>)
      return v.real();
    else
      return v;
  };
  T acc = 0.0;
  while (re(z) < kShiftTarget) {
    T inv = 1.0 / z;
    acc += (m == 0) ? -inv : inv * inv;
    z += 1.0;
  }
  T iz = 1.0 / z;
  T iz2 = iz * iz;
  T series = 0.0;
  if (m == 0) {
    T pw = iz2;
    for (int k = 1; k <= 8; ++k) {
      series += kBernoulli[k - 1] / (2.0 * k) * pw;
      pw *= iz2;
    }
    return acc + std::log(z) - 0.5 * iz - series;
  }
  T pw = iz2 * iz;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli[k - 1] * pw;
    pw *= iz2;
  }
  return acc + iz + 0.5 * iz2 + series;
}

}  // namespace

cplx polygamma(int m, cplx z) {
  if (m != 0 && m != 1) throw DomainError("polygamma: order must be 0 or 1");
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
    throw DomainError("polygamma: pole at " + fmt(z.real()));
  return polygamma_impl<cplx>(m, z);
}

double polygamma(int m, double x) {
  if (m != 0 && m != 1) throw DomainError("polygamma: order must be 0 or 1");
  if (is_nonpositive_integer(x)) throw DomainError("polygamma: pole at " + fmt(x));
  return polygamma_impl<double>(m, x);
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0)) throw DomainError("hurwitz_zeta: s must exceed 1");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
  constexpr int kN = 20;
  CompensatedSum sum;
  for (int k = 0; k < kN; ++k) sum.add(std::pow(a + k, -s));
  double x = a + kN;
  sum.add(std::pow(x, 1.0 - s) / (s - 1.0));
  double xs = std::pow(x, -s);
  sum.add(0.5 * xs);
  // Euler–Maclaurin: Σ B_{2j}/(2j)! · s(s+1)…(s+2j−2) x^{−s−2j+1}
  double poch = s * xs / x;
  double fact = 2.0;
  for (int j = 1; j <= 10; ++j) {
    sum.add(kBernoulli[j - 1] / fact * poch);
    poch *= (s + 2 * j - 1) * (s + 2 * j) / (x * x);
    fact *= (2.0 * j + 1) * (2.0 * j + 2);
  }
  return sum.value();
}

// ---- harmonic numbers and binomials -------------------------------------------

double harmonic_value(unsigned long n, unsigned a) {
  if (n == 0) return 0.0;
  if (a == 0) return static_cast<double>(n);
  if (n > 200000) {
    if (a == 1) return polygamma(0, static_cast<double>(n) + 1.0) + std::numbers::egamma;
    return zeta(a) - hurwitz_zeta(a, static_cast<double>(n) + 1.0);
  }
  CompensatedSum s;
  for (unsigned long i = n; i >= 1; --i) s.add(std::pow(static_cast<double>(i), -static_cast<double>(a)));
  return s.value();
}

namespace {

void harmonic_split(unsigned long lo, unsigned long hi, unsigned a, BigInt& p, BigInt& q) {
  if (hi - lo == 1) {
    p = 1;
    q = boost::multiprecision::pow(BigInt(lo), a);
    return;
  }
  unsigned long mid = lo + (hi - lo) / 2;
  BigInt p1, q1, p2, q2;
  harmonic_split(lo, mid, a, p1, q1);
  harmonic_split(mid, hi, a, p2, q2);
  p = p1 * q2 + p2 * q1;
  q = q1 * q2;
}

}  // namespace

Rational harmonic_exact(unsigned long n, unsigned a) {
  if (n > kHarmonicExactLimit) throw DomainError("harmonic_exact: n exceeds exact limit");
  if (n == 0) return Rational(0);
  BigInt p, q;
  harmonic_split(1, n + 1, a, p, q);
  return Rational(p, q);
}

Harmonic harmonic(unsigned long n, unsigned a) {
  Harmonic h;
  h.value = harmonic_value(n, a);
  if (n <= kHarmonicExactLimit) {
    h.exact = harmonic_exact(n, a);
    h.has_exact = true;
  }
  return h;
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  if (n > 1000) return std::exp(ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0));
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r < 9e15 ? std::round(r) : r;
}

BigInt binomial_exact(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt factorial_exact(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

// ---- series acceleration -----------------------------------------------------

namespace {

// Accumulator honoring the requested precision.
class Accum {
 public:
  explicit Accum(Precision p) : dd_mode_(p == Precision::DoubleDouble) {}
  void add(double x) {
    if (dd_mode_)
      dd_ += DoubleDouble(x);
    else
      cs_.add(x);
  }
  double value() const { return dd_mode_ ? static_cast<double>(dd_) : cs_.value(); }
  DoubleDouble dd() const { return dd_mode_ ? dd_ : DoubleDouble(cs_.value()); }

 private:
  bool dd_mode_;
  DoubleDouble dd_;
  CompensatedSum cs_;
};

class TermStream {
 public:
  TermStream(const std::function<double(long)>& f, long first) : f_(f), next_(first) {}
  double next() {
    double t = f_(next_++);
    if (!std::isfinite(t)) throw NumericError("euler_sum: non-finite term at index " + std::to_string(next_ - 1));
    ++used_;
    return t;
  }
  long used() const { return used_; }

 private:
  const std::function<double(long)>& f_;
  long next_;
  long used_ = 0;
};

double tolerance(double eps, double value) { return eps * std::max(std::abs(value), 1e-30); }

SeriesValue sum_euler(TermStream& ts, std::vector<double> head, const SumOptions& opt) {
  Accum acc(opt.precision);
  // Leading terms are summed directly; the transform acts on what follows.
  constexpr std::size_t kHead = 10;
  while (head.size() < kHead) head.push_back(ts.next());
  for (double t : head) acc.add(t);
  const double first_mag = std::abs(head.back());

  std::vector<DoubleDouble> row, prev;
  DoubleDouble partial = acc.dd();
  double last_est = std::numeric_limits<double>::quiet_NaN();
  double worst_recent = 0.0;
  int good = 0;
  constexpr int kMaxLevels = 400;
  double last_term = 0.0;
  for (int m = 0; m < kMaxLevels; ++m) {
    last_term = ts.next();
    partial += DoubleDouble(last_term);
    row.assign(static_cast<std::size_t>(m) + 1, DoubleDouble());
    row[0] = partial;
    for (int k = 1; k <= m; ++k) row[k] = (prev[k - 1] + row[k - 1]) * DoubleDouble(0.5);
    prev = row;
    double est = static_cast<double>(row[m]);
    if (m > 0) {
      double diff = std::abs(est - last_est);
      if (diff <= tolerance(opt.eps, est)) {
        worst_recent = std::max(worst_recent, diff);
        if (++good >= 3) {
          double round = (opt.precision == Precision::DoubleDouble ? 1e-30 : 4.0 * kEpsMach) * std::abs(est);
          return {est, 2.0 * worst_recent + round, ts.used()};
        }
      } else {
        good = 0;
        worst_recent = 0.0;
      }
    }
    if (m == 60 && !(std::abs(last_term) < first_mag) && first_mag > 0.0)
      throw DomainError("euler_sum: non-decaying terms");
    last_est = est;
  }
  throw NumericError("euler_sum: Euler transform did not converge", std::abs(last_est));
}

// Partial sums at N_k = n0·2^k extrapolated with exponents p0, p0+1, ...
SeriesValue sum_richardson(TermStream& ts, std::vector<double> head, const SumOptions& opt,
                           double p0) {
  if (!(p0 > 0.0)) throw DomainError("euler_sum: power-law tail does not decay fast enough to converge");
  Accum acc(opt.precision);
  long count = 0;
  std::size_t used_head = 0;  // probe terms are consumed in order like fresh ones
  constexpr long kN0 = 64;
  std::vector<std::vector<DoubleDouble>> table;
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_diff = std::numeric_limits<double>::infinity();
  long target = kN0;
  for (int k = 0;; ++k) {
    while (count < target) {
      acc.add(used_head < head.size() ? head[used_head++] : ts.next());
      ++count;
    }
    std::vector<DoubleDouble> row(static_cast<std::size_t>(k) + 1);
    row[0] = acc.dd();
    for (int i = 1; i <= k; ++i) {
      double f = std::exp2(p0 + (i - 1)) - 1.0;
      row[i] = row[i - 1] + (row[i - 1] - table[k - 1][i - 1]) / DoubleDouble(f);
    }
    table.push_back(row);
    if (k >= 2) {
      double est = static_cast<double>(row[k]);
      double diff = std::max(std::abs(est - static_cast<double>(table[k - 1][k - 1])),
                             std::abs(est - static_cast<double>(row[k - 1])));
      if (diff < best_diff) {
        best_diff = diff;
        best = est;
      }
      if (diff <= tolerance(opt.eps, est)) {
        double round = (opt.precision == Precision::DoubleDouble ? 1e-30 : 8.0 * kEpsMach) * std::abs(est);
        return {est, 2.0 * diff + round, ts.used()};
      }
    }
    if (target * 2 > opt.max_terms) break;
    target *= 2;
  }
  throw NumericError("euler_sum: Richardson extrapolation stalled at error " + fmt(best_diff) +
                         " (value " + fmt(best) + ")",
                     best_diff);
}

double hurwitz_tail(const std::vector<double>& js, const std::vector<double>& as, double s, long n) {
  // Solve a_j = A j^{-s} + B j^{-s-1} + C j^{-s-2} at three nodes.
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    double j = js[r];
    double base = std::pow(j, -s);
    m[r][0] = base;
    m[r][1] = base / j;
    m[r][2] = base / (j * j);
    m[r][3] = as[r];
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    for (int k = 0; k < 4; ++k) std::swap(m[c][k], m[piv][k]);
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  double A = m[0][3] / m[0][0], B = m[1][3] / m[1][1], C = m[2][3] / m[2][2];
  double a = static_cast<double>(n) + 1.0;
  return A * hurwitz_zeta(s, a) + B * hurwitz_zeta(s + 1.0, a) + C * hurwitz_zeta(s + 2.0, a);
}

SeriesValue sum_hurwitz(TermStream& ts, std::vector<double> head, const SumOptions& opt, double s,
                        long first_index) {
  if (!(s > 1.0)) throw DomainError("euler_sum: power-law tail does not decay fast enough to converge");
  Accum acc(opt.precision);
  std::vector<double> terms = std::move(head);
  long target = 1024;
  double prev_est = std::numeric_limits<double>::quiet_NaN();
  double diff = std::numeric_limits<double>::infinity();
  for (;;) {
    while (static_cast<long>(terms.size()) < target) terms.push_back(ts.next());
    acc = Accum(opt.precision);
    for (double t : terms) acc.add(t);
    long n_last = first_index + target - 1;
    // Nodes at the last index and back across the final decade.
    std::vector<double> js, as;
    for (long back : {0L, target / 4, target / 2}) {
      long idx = target - 1 - back;
      js.push_back(static_cast<double>(first_index + idx));
      as.push_back(terms[static_cast<std::size_t>(idx)]);
    }
    double est = acc.value() + hurwitz_tail(js, as, s, n_last);
    if (!std::isnan(prev_est)) {
      diff = std::abs(est - prev_est);
      if (diff <= tolerance(opt.eps, est)) return {est, 2.0 * diff + 8.0 * kEpsMach * std::abs(est), ts.used()};
    }
    prev_est = est;
    if (target * 2 > opt.max_terms) break;
    target *= 2;
  }
  throw NumericError("euler_sum: Hurwitz tail closure did not converge", diff);
}

SeriesValue sum_direct(TermStream& ts, std::vector<double> head, const SumOptions& opt) {
  Accum acc(opt.precision);
  int small = 0;
  double last = 0.0;
  auto feed = [&](double t) {
    acc.add(t);
    last = t;
    small = std::abs(t) <= tolerance(opt.eps, acc.value()) ? small + 1 : 0;
  };
  for (double t : head) feed(t);
  while (small < 3) {
    if (ts.used() >= opt.max_terms)
      throw NumericError("euler_sum: direct summation hit the term cap", std::abs(last));
    feed(ts.next());
  }
  return {acc.value(), 3.0 * std::abs(last) + 4.0 * kEpsMach * std::abs(acc.value()), ts.used()};
}

}  // namespace

SeriesValue euler_sum(const std::function<double(long)>& term, const SumOptions& opt) {
  TermStream ts(term, opt.first_index);
  std::vector<double> head;
  Acceleration method = opt.method;
  double decay = opt.decay;

  if (method == Acceleration::Auto) {
    constexpr int kProbe = 24;
    for (int i = 0; i < kProbe; ++i) head.push_back(ts.next());
    bool all_zero = std::all_of(head.begin(), head.end(), [](double t) { return t == 0.0; });
    if (all_zero) return {0.0, 0.0, ts.used()};
    bool alternating = true;
    for (int i = kProbe - 12; i < kProbe; ++i)
      if (!(head[i] * head[i - 1] < 0.0)) alternating = false;
    if (alternating) {
      method = Acceleration::Euler;
    } else {
      method = Acceleration::Richardson;
      if (decay == 0.0) {
        // s(j) = log2(a_j / a_2j) carries an O(1/j) bias; one extrapolation step
        // removes it, and a nearby simple rational is taken as exact.
        while (ts.used() < 4096) head.push_back(ts.next());
        auto s_at = [&](std::size_t j) {
          double a = std::abs(head[j - 1]), b = std::abs(head[2 * j - 1]);
          return (a == 0.0 || b == 0.0) ? std::numeric_limits<double>::quiet_NaN() : std::log2(a / b);
        };
        const double s1 = s_at(1024), s2 = s_at(2048);
        if (std::isnan(s1) || std::isnan(s2)) return sum_direct(ts, std::move(head), opt);
        double est = 2.0 * s2 - s1;
        if (est > 30.0) return sum_direct(ts, std::move(head), opt);
        if (!(est > 1.02)) throw DomainError("euler_sum: non-decaying or divergent terms");
        bool snapped = false;
        for (int q = 1; q <= 12 && !snapped; ++q) {
          double r = std::round(est * q) / q;
          if (std::abs(est - r) <= 1e-4) {
            est = r;
            snapped = true;
          }
        }
        if (!snapped) {
          // Unrecognized exponent: widen the bound by the tail's sensitivity to it,
          // tail ≈ a_N·N/(s−1) with d(tail)/ds ≈ tail·(ln N + 1/(s−1)).
          const double spread = std::max(std::abs(s2 - s1), 1e-3);
          const double n = static_cast<double>(head.size());
          const double tail = std::abs(head.back()) * n / (est - 1.0);
          const double widen = tail * spread * (std::log(n) + 1.0 / (est - 1.0));
          SeriesValue r = sum_richardson(ts, std::move(head), opt, est - 1.0);
          r.err += widen;
          return r;
        }
        decay = est;
      }
    }
  }

  switch (method) {
    case Acceleration::Euler:
      return sum_euler(ts, std::move(head), opt);
    case Acceleration::Richardson:
      if (decay == 0.0) throw DomainError("euler_sum: Richardson needs the power-law decay exponent");
      return sum_richardson(ts, std::move(head), opt, decay - 1.0);
    case Acceleration::HurwitzTail:
      if (decay == 0.0) throw DomainError("euler_sum: Hurwitz tail needs the power-law decay exponent");
      return sum_hurwitz(ts, std::move(head), opt, decay, opt.first_index);
    case Acceleration::Direct:
    case Acceleration::Auto:
      break;
  }
  return sum_direct(ts, std::move(head), opt);
}

// ---- hypergeometric --------------------------------------------------------------

SeriesValue p_f_q(std::span<const double> alphas, std::span<const double> betas, double z, double eps) {
  for (double b : betas)
    if (is_nonpositive_integer(b)) throw DomainError("p_f_q: lower parameter is a nonpositive integer");
  bool terminating = std::any_of(alphas.begin(), alphas.end(), is_nonpositive_integer);
  if (z == 0.0) return {1.0, 0.0, 1};
  const std::size_t p = alphas.size(), q = betas.size();

  auto ratio = [&](long j) {
    double r = z / (j + 1.0);
    for (double a : alphas) r *= (j + a);
    for (double b : betas) r /= (j + b);
    return r;
  };

  if (!terminating && p == q + 1 && std::abs(z) >= 1.0) {
    if (std::abs(z) > 1.0) throw DomainError("p_f_q: divergent for |z| > 1");
    double sigma = 0.0;
    for (double b : betas) sigma += b;
    for (double a : alphas) sigma -= a;
    double t = 1.0;
    long expect = 0;
    auto term = [&](long j) {
      if (j != expect) throw DomainError("p_f_q: out-of-order term request");
      double out = t;
      t *= ratio(j);
      ++expect;
      return out;
    };
    SumOptions opt;
    opt.eps = eps;
    if (z == 1.0) {
      if (!(sigma > 0.0)) throw DomainError("p_f_q: divergent at z = 1 (parameter excess must be positive)");
      opt.method = Acceleration::Richardson;
      opt.decay = 1.0 + sigma;
    } else {
      if (!(sigma > -1.0)) throw DomainError("p_f_q: divergent at z = -1 (parameter excess must exceed -1)");
      opt.method = Acceleration::Euler;
    }
    return euler_sum(term, opt);
  }
  if (!terminating && p > q + 1) throw DomainError("p_f_q: divergent series (p > q + 1)");

  CompensatedSum sum;
  double t = 1.0;
  sum.add(t);
  int small = 0;
  long j = 0;
  double r = 0.0;
  constexpr long kCap = 10'000'000;
  for (; j < kCap; ++j) {
    r = ratio(j);
    t *= r;
    if (t == 0.0 && terminating) break;
    sum.add(t);
    small = (std::abs(t) < eps * std::abs(sum.value())) ? small + 1 : 0;
    if (small >= 3) break;
  }
  if (j >= kCap) throw NumericError("p_f_q: term cap reached", std::abs(t));
  double s = sum.value();
  double rounding = 4.0 * kEpsMach * std::abs(s) * std::sqrt(static_cast<double>(j + 1));
  double tail = 0.0;
  if (!terminating) {
    double ar = std::abs(r);
    tail = ar < 1.0 ? std::abs(t) * ar / (1.0 - ar) : std::abs(t) * static_cast<double>(j);
  }
  return {s, tail + rounding, j + 1};
}

// ---- quadrature -------------------------------------------------------------------

namespace {

struct DeResult {
  double value;
  double err;
  long evals;
  bool ok;
};

// Tanh-sinh on a finite interval.
DeResult tanh_sinh(const std::function<double(double)>& f, double a, double b, double eps) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  constexpr double kTmax = 3.6;
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  long evals = 0;
  double l1 = 0.0;
  auto node = [&](double t) {
    double u = kHalfPi * std::sinh(t);
    double ch = std::cosh(u);
    double w = h * kHalfPi * std::cosh(t) / (ch * ch);
    double delta = h * 2.0 / (std::exp(2.0 * std::abs(u)) + 1.0);  // distance to the endpoint
    if (delta == 0.0 || w == 0.0) return 0.0;
    double x = t > 0 ? b - delta : (t < 0 ? a + delta : c);
    if (x <= a || x >= b) return 0.0;
    double fx = f(x);
    ++evals;
    if (!std::isfinite(fx)) return 0.0;
    l1 += std::abs(fx) * w;
    return fx * w;
  };
  double step = 1.0;
  CompensatedSum s;
  s.add(node(0.0));
  for (double t = step; t <= kTmax; t += step) {
    s.add(node(t));
    s.add(node(-t));
  }
  double prev = s.value() * step;
  double prev_diff = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 11; ++level) {
    step *= 0.5;
    for (double t = step; t <= kTmax; t += 2.0 * step) {
      s.add(node(t));
      s.add(node(-t));
    }
    double cur = s.value() * step;
    double diff = std::abs(cur - prev);
    double tol = std::max(eps * std::max(std::abs(cur), 1e-3 * l1 * step), 16.0 * kEpsMach * l1 * step);
    if (level >= 3 && diff <= tol) {
      // Quadratic convergence: the next difference is about diff²/prev_diff.
      double est = std::min(diff, prev_diff > 0 ? diff * diff / prev_diff : diff);
      return {cur, std::max(est, 8.0 * kEpsMach * l1 * step), evals, true};
    }
    prev_diff = diff;
    prev = cur;
  }
  return {prev, prev_diff, evals, false};
}

DeResult exp_sinh(const std::function<double(double)>& f, double a, double eps) {
  constexpr double kT = 4.5;
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  long evals = 0;
  double l1 = 0.0;
  auto node = [&](double t) {
    double e = std::exp(kHalfPi * std::sinh(t));
    double w = kHalfPi * std::cosh(t) * e;
    double x = a + e;
    if (x == a || !std::isfinite(x) || !std::isfinite(w)) return 0.0;
    double fx = f(x);
    ++evals;
    if (!std::isfinite(fx)) return 0.0;
    double v = fx * w;
    if (!std::isfinite(v)) return 0.0;
    l1 += std::abs(v);
    return v;
  };
  double step = 1.0;
  CompensatedSum s;
  s.add(node(0.0));
  for (double t = step; t <= kT; t += step) {
    s.add(node(t));
    s.add(node(-t));
  }
  double prev = s.value() * step;
  double prev_diff = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 11; ++level) {
    step *= 0.5;
    for (double t = step; t <= kT; t += 2.0 * step) {
      s.add(node(t));
      s.add(node(-t));
    }
    double cur = s.value() * step;
    double diff = std::abs(cur - prev);
    double tol = std::max(eps * std::max(std::abs(cur), 1e-3 * l1 * step), 16.0 * kEpsMach * l1 * step);
    if (level >= 3 && diff <= tol) {
      double est = std::min(diff, prev_diff > 0 ? diff * diff / prev_diff : diff);
      return {cur, std::max(est, 8.0 * kEpsMach * l1 * step), evals, true};
    }
    prev_diff = diff;
    prev = cur;
  }
  return {prev, prev_diff, evals, false};
}

DeResult adaptive_finite(const std::function<double(double)>& f, double a, double b, double eps, int depth) {
  DeResult r = tanh_sinh(f, a, b, eps);
  if (r.ok || depth == 0) return r;
  double m = 0.5 * (a + b);
  DeResult l = adaptive_finite(f, a, m, eps, depth - 1);
  DeResult h = adaptive_finite(f, m, b, eps, depth - 1);
  return {l.value + h.value, l.err + h.err, r.evals + l.evals + h.evals, l.ok && h.ok};
}

SeriesValue integrate(const std::function<double(double)>& f, double a, double b, double eps,
                      std::span<const double> breakpoints, bool& ok) {
  if (!(b > a)) {
    if (a == b) return {0.0, 0.0, 0};
    SeriesValue r = integrate(f, b, a, eps, breakpoints, ok);
    r.value = -r.value;
    return r;
  }
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  std::sort(cuts.begin() + 1, cuts.end());
  const bool infinite = std::isinf(b);
  if (infinite && cuts.size() == 1) cuts.push_back(a + 1.0);
  if (!infinite) cuts.push_back(b);

  double total = 0.0, err = 0.0;
  long evals = 0;
  ok = true;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    DeResult r = adaptive_finite(f, cuts[i], cuts[i + 1], eps, 8);
    total += r.value;
    err += r.err;
    evals += r.evals;
    ok = ok && r.ok;
  }
  if (infinite) {
    DeResult r = exp_sinh(f, cuts.back(), eps);
    total += r.value;
    err += r.err;
    evals += r.evals;
    ok = ok && r.ok;
  }
  // Pieces that missed locally can still meet the tolerance of the whole.
  if (!ok && err <= eps * std::abs(total)) ok = true;
  return {total, err, evals};
}

}  // namespace

SeriesValue quad1d(const std::function<double(double)>& f, double a, double b, double eps,
                   std::span<const double> breakpoints) {
  bool ok = true;
  SeriesValue r = integrate(f, a, b, eps, breakpoints, ok);
  if (!ok) throw NumericError("quad1d: requested accuracy not reached (estimate " + fmt(r.err) + ")", r.err);
  return r;
}

SeriesValue quad2d(const std::function<double(double, double)>& f, double a1, double b1, double a2,
                   double b2, double eps) {
  double inner_err = 0.0;
  long evals = 0;
  auto outer = [&](double x) {
    // Inner misses are judged against the outer value below.
    bool ok = true;
    SeriesValue r = integrate([&](double y) { return f(x, y); }, a2, b2, eps, {}, ok);
    inner_err = std::max(inner_err, r.err);
    evals += r.terms_used;
    return r.value;
  };
  SeriesValue r = quad1d(outer, a1, b1, eps);
  double width = std::isinf(b1) ? 1.0 : (b1 - a1);
  double err = r.err + width * inner_err;
  if (err > eps * std::max(std::abs(r.value), 1.0) * 10.0)
    throw NumericError("quad2d: requested accuracy not reached (estimate " + fmt(err) + ")", err);
  return {r.value, err, evals};
}

}  // namespace recordlab::specfun
