#include "recordlab/exactlaws.hpp"

#include "recordlab/charpoly.hpp"
#include "recordlab/error.hpp"
#include "recordlab/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace recordlab {

using specfun::binomial;
using specfun::binomial_exact;
using specfun::factorial_exact;
using specfun::ln_gamma;
using specfun::ln_gamma_ratio;

namespace {

void check_n(long n) {
  if (n < 1) throw DomainError("n must be at least 1");
}

Rational exact_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite value to a rational");
  if (x == 0.0) return Rational(0);
  int e = 0;
  double m = std::frexp(x, &e);
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  e -= 53;
  Rational r(mant);
  BigInt two = 2;
  if (e > 0)
    r *= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(e)));
  else if (e < 0)
    r /= Rational(boost::multiprecision::pow(two, static_cast<unsigned>(-e)));
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

KernelDist simplex_kernel_closed(int d, long n) {
  KernelDist k{n, std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  for (int j = 0; j < d; ++j) {
    const double a = static_cast<double>(j + 1) / d;
    const double coef = binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(j)) * ((j % 2) ? -1.0 : 1.0);
    // T_k = Γ(n)Γ(k+a)/(Γ(k+1)Γ(n+a)), starting at k = 0.
    double t;
    if (n <= 256) {
      // (n−1)!/(a(a+1)⋯(a+n−1)) as a product stays within a few ulp.
      t = 1.0 / a;
      for (long i = 1; i < n; ++i) t *= static_cast<double>(i) / (static_cast<double>(i) + a);
    } else {
      t = std::exp(ln_gamma(a) - ln_gamma_ratio(static_cast<double>(n), a, 0.0));
    }
    for (long i = 0; i < n; ++i) {
      k.probs[static_cast<std::size_t>(i)] += coef * t;
      t *= (static_cast<double>(i) + a) / (static_cast<double>(i) + 1.0);
    }
  }
  for (double& p : k.probs) p = std::max(p, 0.0);
  return k;
}

// π_{n,k} = Y_{d−1}(x₁,…,x_{d−1}) / (n·(d−1)!), x_j = (j−1)!·(H_n^{(j)} − H_k^{(j)}).
template <class T, class Pow>
std::vector<T> cube_kernel_bell(int d, long n, Pow inv_pow) {
  const int m = d - 1;
  std::vector<T> probs(static_cast<std::size_t>(n));
  std::vector<T> dh(static_cast<std::size_t>(m) + 1, T(0));
  std::vector<T> fact(static_cast<std::size_t>(m) + 1, T(1));
  for (int j = 1; j <= m; ++j) fact[static_cast<std::size_t>(j)] = fact[static_cast<std::size_t>(j) - 1] * j;
  std::vector<T> x(static_cast<std::size_t>(m) + 1), y(static_cast<std::size_t>(m) + 1);
  for (long k = n - 1; k >= 0; --k) {
    for (int j = 1; j <= m; ++j) dh[static_cast<std::size_t>(j)] += inv_pow(k + 1, j);
    for (int j = 1; j <= m; ++j) x[static_cast<std::size_t>(j)] = fact[static_cast<std::size_t>(j) - 1] * dh[static_cast<std::size_t>(j)];
    y[0] = T(1);
    for (int t = 0; t < m; ++t) {
      T acc(0);
      for (int i = 0; i <= t; ++i)
        acc += T(static_cast<long>(binomial(static_cast<unsigned>(t), static_cast<unsigned>(i)))) *
               y[static_cast<std::size_t>(t - i)] * x[static_cast<std::size_t>(i) + 1];
      y[static_cast<std::size_t>(t) + 1] = acc;
    }
    probs[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(m)] / (T(n) * fact[static_cast<std::size_t>(m)]);
  }
  return probs;
}

KernelDist kernel_quadrature(const Model& model, long n) {
  const int d = model.d;
  KernelDist out{n, std::vector<double>(static_cast<std::size_t>(n))};
  for (long k = 0; k < n; ++k) {
    const double lb = ln_gamma(static_cast<double>(n)) - ln_gamma(static_cast<double>(k) + 1.0) -
                      ln_gamma(static_cast<double>(n - k));
    std::function<double(double)> f;
    if (model.kind == ModelKind::Simplex) {
      f = [=](double t) {
        double lt = std::log(t);
        double v = lb + std::log(static_cast<double>(d)) + static_cast<double>(k * d) * lt +
                   static_cast<double>(n - 1 - k) * std::log1p(-std::pow(t, d)) + (d - 1) * std::log1p(-t);
        return std::exp(v);
      };
    } else {
      const double lf = ln_gamma(static_cast<double>(d));
      f = [=](double t) {
        double lt = std::log(t);
        double v = lb + static_cast<double>(k) * lt + static_cast<double>(n - 1 - k) * std::log1p(-t) - lf;
        if (d > 1) v += (d - 1) * std::log(-lt);
        return std::exp(v);
      };
    }
    out.probs[static_cast<std::size_t>(k)] = specfun::quad1d(f, 0.0, 1.0, 1e-14).value;
  }
  return out;
}

}  // namespace

std::string to_string(Statistic s) {
  switch (s) {
    case Statistic::Pareto: return "pareto";
    case Statistic::Chain: return "chain";
    case Statistic::Dominating: return "dominating";
    case Statistic::Maxima: return "maxima";
  }
  return "unknown";
}

Statistic parse_statistic(const std::string& s) {
  if (s == "pareto") return Statistic::Pareto;
  if (s == "chain") return Statistic::Chain;
  if (s == "dominating" || s == "dom") return Statistic::Dominating;
  if (s == "maxima") return Statistic::Maxima;
  throw DomainError("unknown statistic '" + s + "'");
}

KernelDist chain_kernel(const Model& model, long n, KernelMethod method) {
  check_n(n);
  if (method == KernelMethod::Quadrature) return kernel_quadrature(model, n);
  if (model.kind == ModelKind::Simplex) return simplex_kernel_closed(model.d, n);
  auto inv_pow = [](long i, int j) { return std::pow(static_cast<double>(i), -j); };
  return {n, cube_kernel_bell<double>(model.d, n, inv_pow)};
}

std::vector<Rational> chain_kernel_exact(const Model& model, long n) {
  check_n(n);
  if (n > 2 * kExactRationalLimit) throw DomainError("chain_kernel_exact: n too large for exact mode");
  if (model.kind == ModelKind::Hypercube) {
    auto inv_pow = [](long i, int j) { return Rational(1) / Rational(boost::multiprecision::pow(BigInt(i), static_cast<unsigned>(j))); };
    return cube_kernel_bell<Rational>(model.d, n, inv_pow);
  }
  const int d = model.d;
  std::vector<Rational> probs(static_cast<std::size_t>(n), Rational(0));
  const Rational fact_n1(factorial_exact(static_cast<unsigned>(n - 1)));
  for (int j = 0; j < d; ++j) {
    const Rational a(j + 1, d);
    Rational coef(binomial_exact(static_cast<unsigned>(d - 1), static_cast<unsigned>(j)));
    if (j % 2) coef = -coef;
    Rational denom(1);
    for (long i = 0; i < n; ++i) denom *= Rational(i) + a;
    Rational t = fact_n1 / denom;
    for (long i = 0; i < n; ++i) {
      probs[static_cast<std::size_t>(i)] += coef * t;
      t = t * (Rational(i) + a) / Rational(i + 1);
    }
  }
  return probs;
}

MomentTable chain_moments_exact(const Model& model, long n_max) {
  check_n(n_max);
  if (n_max > kChainRecurrenceLimit) throw DomainError("chain_moments_exact: n_max exceeds 20000");
  MomentTable t{model, Statistic::Chain, {}};
  std::vector<double> mu(static_cast<std::size_t>(n_max) + 1, 0.0), s(mu);
  for (long n = 1; n <= n_max; ++n) {
    KernelDist k = chain_kernel(model, n);
    specfun::CompensatedSum m1, m2;
    m1.add(1.0);
    m2.add(1.0);
    for (long i = 1; i < n; ++i) {
      const double p = k.probs[static_cast<std::size_t>(i)];
      m1.add(p * mu[static_cast<std::size_t>(i)]);
      m2.add(p * (2.0 * mu[static_cast<std::size_t>(i)] + s[static_cast<std::size_t>(i)]));
    }
    mu[static_cast<std::size_t>(n)] = m1.value();
    s[static_cast<std::size_t>(n)] = m2.value();
    double var = std::max(0.0, s[static_cast<std::size_t>(n)] - mu[static_cast<std::size_t>(n)] * mu[static_cast<std::size_t>(n)]);
    t.rows.push_back({n, mu[static_cast<std::size_t>(n)], var, std::nullopt, std::nullopt});
  }
  return t;
}

MomentTable chain_moments_rational(const Model& model, long n_max) {
  check_n(n_max);
  if (n_max > kExactRationalLimit) throw DomainError("chain_moments_rational: n_max exceeds 64");
  MomentTable t{model, Statistic::Chain, {}};
  std::vector<Rational> mu(static_cast<std::size_t>(n_max) + 1, Rational(0)), s(mu);
  for (long n = 1; n <= n_max; ++n) {
    std::vector<Rational> k = chain_kernel_exact(model, n);
    Rational m1(1), m2(1);
    for (long i = 1; i < n; ++i) {
      m1 += k[static_cast<std::size_t>(i)] * mu[static_cast<std::size_t>(i)];
      m2 += k[static_cast<std::size_t>(i)] * (2 * mu[static_cast<std::size_t>(i)] + s[static_cast<std::size_t>(i)]);
    }
    mu[static_cast<std::size_t>(n)] = m1;
    s[static_cast<std::size_t>(n)] = m2;
    Rational var = m2 - m1 * m1;
    t.rows.push_back({n, to_double(m1), to_double(var), m1, var});
  }
  return t;
}

namespace {

// q_j with P_n(y) = 1 + Σ_k binom(n,k)(−1)^k ∏_{j<k}(1 − y·q_j).
Rational pgf_factor_exact(const Model& model, long j) {
  const int d = model.d;
  if (model.kind == ModelKind::Simplex) {
    BigInt p = 1;
    for (int i = 1; i <= d; ++i) p *= BigInt(static_cast<long>(d) * j + i);
    return Rational(factorial_exact(static_cast<unsigned>(d)), p);
  }
  return Rational(BigInt(1), boost::multiprecision::pow(BigInt(j + 1), static_cast<unsigned>(d)));
}

double pgf_factor(const Model& model, long j) {
  const int d = model.d;
  if (model.kind == ModelKind::Simplex) {
    double q = 1.0;
    for (int i = 1; i <= d; ++i) q *= static_cast<double>(i) / (static_cast<double>(d) * j + i);
    return q;
  }
  return std::pow(static_cast<double>(j + 1), -d);
}

}  // namespace

Rational chain_mean_altsum(int d, long n) {
  if (d < 1) throw DomainError("chain_mean_altsum: d must be at least 1");
  check_n(n);
  if (n > kExactRationalLimit) throw DomainError("chain_mean_altsum: n exceeds the exact-mode limit 64");
  const Model m(ModelKind::Simplex, d);
  Rational sum(0), prod(1);
  for (long k = 1; k <= n; ++k) {
    if (k >= 2) prod *= 1 - pgf_factor_exact(m, k - 1);
    Rational term = Rational(binomial_exact(static_cast<unsigned>(n), static_cast<unsigned>(k))) * prod;
    sum += (k % 2) ? term : -term;
  }
  return sum;
}

Rational chain_pgf_exact(const Model& model, long n, const Rational& y) {
  check_n(n);
  if (n > kExactRationalLimit) throw DomainError("chain_pgf_exact: n exceeds the exact-mode limit 64");
  Rational sum(1), prod(1);
  for (long k = 1; k <= n; ++k) {
    prod *= 1 - y * pgf_factor_exact(model, k - 1);
    Rational term = Rational(binomial_exact(static_cast<unsigned>(n), static_cast<unsigned>(k))) * prod;
    sum += (k % 2) ? -term : term;
  }
  return sum;
}

PgfValue chain_pgf(const Model& model, long n, double y) {
  check_n(n);
  if (n <= kExactRationalLimit)
    return {to_double(chain_pgf_exact(model, n, exact_from_double(y))), true, false};
  specfun::CompensatedSum sum;
  sum.add(1.0);
  double prod = 1.0;
  for (long k = 1; k <= n; ++k) {
    prod *= 1.0 - y * pgf_factor(model, k - 1);
    double term = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)) * prod;
    sum.add((k % 2) ? -term : term);
  }
  return {sum.value(), false, true};
}

PhiForms phi_product(int d, long n) {
  if (d < 1) throw DomainError("phi_product: d must be at least 1");
  check_n(n);
  const Model m(ModelKind::Simplex, d);
  double prod = 1.0;
  for (long j = 1; j < n; ++j) prod *= 1.0 - pgf_factor(m, j);
  PhiForms f;
  f.product = prod;
  if (d == 1) {
    f.gamma_form = 1.0 / static_cast<double>(n);
  } else {
    Spectrum s = char_zeros(d, 1.0);
    if (static_cast<int>(s.lambdas.size()) != d - 1) throw NumericError("phi_product: zeros unavailable");
    std::complex<double> acc = -std::log(static_cast<double>(n));
    for (int l = 1; l < d; ++l) {
      std::complex<double> a = -s.lambdas[static_cast<std::size_t>(l) - 1] / static_cast<double>(d);
      std::complex<double> b(static_cast<double>(l) / d, 0.0);
      acc += ln_gamma_ratio(static_cast<double>(n), a, b) - ln_gamma_ratio(1.0, a, b);
    }
    f.gamma_form = std::exp(acc).real();
  }
  f.difference = f.product - f.gamma_form;
  return f;
}

DomMoments dom_moments(const Model& model, long n) {
  check_n(n);
  const int d = model.d;
  DomMoments r;
  if (model.kind == ModelKind::Hypercube) {
    r.mean = specfun::harmonic_value(static_cast<unsigned long>(n), static_cast<unsigned>(d));
    r.var = r.mean - specfun::harmonic_value(static_cast<unsigned long>(n), static_cast<unsigned>(2 * d));
    if (n <= kExactRationalLimit) {
      r.mean_exact = specfun::harmonic_exact(static_cast<unsigned long>(n), static_cast<unsigned>(d));
      r.var_exact = *r.mean_exact - specfun::harmonic_exact(static_cast<unsigned long>(n), static_cast<unsigned>(2 * d));
    }
    return r;
  }
  // a_k = (d!)^k Γ(k)^d / Γ(dk+1): probability that arrival k is a dominating record.
  const double lnfact = ln_gamma(d + 1.0);
  specfun::CompensatedSum e, w;
  double hk = 0.0;  // H_{k−1}^{(d)}
  for (long k = 1; k <= n; ++k) {
    double a = std::exp(k * lnfact + d * ln_gamma(static_cast<double>(k)) - ln_gamma(static_cast<double>(d) * k + 1.0));
    if (a == 0.0) break;
    e.add(a);
    w.add(a * hk);
    hk += std::pow(static_cast<double>(k), -d);
  }
  r.mean = e.value();
  r.var = std::max(0.0, 2.0 * w.value() + r.mean - r.mean * r.mean);
  if (n <= kExactRationalLimit) {
    Rational ee(0), ww(0), h(0);
    const BigInt df = factorial_exact(static_cast<unsigned>(d));
    for (long k = 1; k <= n; ++k) {
      BigInt num = boost::multiprecision::pow(df, static_cast<unsigned>(k)) *
                   boost::multiprecision::pow(factorial_exact(static_cast<unsigned>(k - 1)), static_cast<unsigned>(d));
      Rational a(num, factorial_exact(static_cast<unsigned>(d * k)));
      ee += a;
      ww += a * h;
      h += Rational(BigInt(1), boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(d)));
    }
    r.mean_exact = ee;
    r.var_exact = 2 * ww + ee - ee * ee;
  }
  return r;
}

MomentTable dom_moment_table(const Model& model, long n_max) {
  check_n(n_max);
  MomentTable t{model, Statistic::Dominating, {}};
  const int d = model.d;
  specfun::CompensatedSum e, w, h2;  // h2 collects H^{(2d)} for the hypercube
  double hk = 0.0;
  const double lnfact = ln_gamma(d + 1.0);
  for (long k = 1; k <= n_max; ++k) {
    MomentRow row{k, 0.0, 0.0, std::nullopt, std::nullopt};
    if (model.kind == ModelKind::Hypercube) {
      e.add(std::pow(static_cast<double>(k), -d));
      h2.add(std::pow(static_cast<double>(k), -2 * d));
      row.mean = e.value();
      row.var = e.value() - h2.value();
    } else {
      double a = std::exp(k * lnfact + d * ln_gamma(static_cast<double>(k)) - ln_gamma(static_cast<double>(d) * k + 1.0));
      e.add(a);
      w.add(a * hk);
      hk += std::pow(static_cast<double>(k), -d);
      row.mean = e.value();
      row.var = std::max(0.0, 2.0 * w.value() + row.mean - row.mean * row.mean);
    }
    if (k <= kExactRationalLimit) {
      DomMoments ex = dom_moments(model, k);
      row.mean_exact = ex.mean_exact;
      row.var_exact = ex.var_exact;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

double closed_form_d2(ClosedFormD2 which, long n) {
  check_n(n);
  const double h1 = specfun::harmonic_value(static_cast<unsigned long>(n), 1);
  const double h2 = specfun::harmonic_value(static_cast<unsigned long>(n), 2);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  switch (which) {
    case ClosedFormD2::SimplexChainMean:
      return (h1 + 2.0) / 3.0;
    case ClosedFormD2::CubeChainMean:
      return (h1 + 1.0) / 2.0;
    case ClosedFormD2::CubeChainVariance:
      return (h1 + h2 - 2.0) / 4.0;
    case ClosedFormD2::SimplexChainVariance: {
      const double nn = static_cast<double>(n);
      const double lfn = ln_gamma(nn + 1.0);
      auto term = [&](long jj) {
        const double j = static_cast<double>(jj);
        // 1/binom(n+j, n) and 1/binom(n+j+½, n) through Γ ratios.
        double ib1 = std::exp(lfn - ln_gamma_ratio(j + 1.0, nn, 0.0));
        double ib2 = std::exp(lfn - ln_gamma_ratio(j + 1.5, nn, 0.0));
        return (2.0 * j - 1.0) / (j * j) * ib1 - 2.0 * j / ((j + 0.5) * (j + 0.5)) * ib2;
      };
      specfun::SumOptions opt;
      opt.first_index = 1;
      opt.eps = 1e-15;
      if (n <= 25) {
        opt.method = specfun::Acceleration::Richardson;
        opt.decay = nn + 2.0;
      } else {
        opt.method = specfun::Acceleration::Direct;
      }
      double series = specfun::euler_sum(term, opt).value;
      return 5.0 / 27.0 * h1 + 2.0 * pi2 / 27.0 + h2 / 9.0 - 26.0 / 27.0 - 2.0 / 9.0 * series;
    }
  }
  throw DomainError("closed_form_d2: unknown statistic");
}

RecurrenceSolution solve_record_recurrence(int d, const std::function<double(long)>& b, long n_max) {
  if (d < 1) throw DomainError("solve_record_recurrence: d must be at least 1");
  check_n(n_max);
  if (n_max > kExactRationalLimit) throw DomainError("solve_record_recurrence: n_max exceeds 64");
  const Model m(ModelKind::Simplex, d);
  const std::size_t N = static_cast<std::size_t>(n_max);
  std::vector<Rational> bv(N + 2, Rational(0));
  for (long n = 1; n <= n_max + 1; ++n) bv[static_cast<std::size_t>(n)] = exact_from_double(b(n));

  // Binomial transform b̃_n = Σ_k binom(n,k)(−1)^{n−k} b_k.
  std::vector<Rational> bt(N + 2, Rational(0));
  for (long n = 0; n <= n_max + 1; ++n) {
    Rational acc(0);
    for (long k = 0; k <= n; ++k) {
      Rational term = Rational(binomial_exact(static_cast<unsigned>(n), static_cast<unsigned>(k))) * bv[static_cast<std::size_t>(k)];
      acc += ((n - k) % 2) ? -term : term;
    }
    bt[static_cast<std::size_t>(n)] = acc;
  }
  std::vector<Rational> at(N + 1, Rational(0));
  for (long n = 0; n < n_max; ++n) {
    Rational f = 1 - pgf_factor_exact(m, n);
    at[static_cast<std::size_t>(n) + 1] = -f * at[static_cast<std::size_t>(n)] + bt[static_cast<std::size_t>(n)] + bt[static_cast<std::size_t>(n) + 1];
  }
  RecurrenceSolution sol;
  sol.alternating.assign(N + 1, 0.0);
  for (long n = 1; n <= n_max; ++n) {
    Rational acc(0);
    for (long k = 0; k <= n; ++k)
      acc += Rational(binomial_exact(static_cast<unsigned>(n), static_cast<unsigned>(k))) * at[static_cast<std::size_t>(k)];
    sol.alternating[static_cast<std::size_t>(n)] = to_double(acc);
  }

  sol.kernel.assign(N + 1, 0.0);
  for (long n = 1; n <= n_max; ++n) {
    KernelDist k = chain_kernel(m, n);
    specfun::CompensatedSum s;
    s.add(b(n));
    for (long i = 1; i < n; ++i) s.add(k.probs[static_cast<std::size_t>(i)] * sol.kernel[static_cast<std::size_t>(i)]);
    sol.kernel[static_cast<std::size_t>(n)] = s.value();
  }
  return sol;
}

std::string rational_string(const Rational& r) {
  std::string num = boost::multiprecision::numerator(r).str();
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num;
  return num + "/" + den.str();
}

std::string moment_table_json(const MomentTable& t) {
  nlohmann::ordered_json j;
  j["model"] = to_string(t.model.kind);
  j["d"] = t.model.d;
  j["statistic"] = to_string(t.statistic);
  j["rows"] = nlohmann::ordered_json::array();
  for (const MomentRow& r : t.rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["mean"] = round15(r.mean);
    row["var"] = round15(r.var);
    if (r.mean_exact) row["mean_exact"] = rational_string(*r.mean_exact);
    if (r.var_exact) row["var_exact"] = rational_string(*r.var_exact);
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

std::string moment_table_csv(const MomentTable& t) {
  std::ostringstream os;
  os << "n,mean,var,mean_exact,var_exact\n";
  for (const MomentRow& r : t.rows) {
    os << r.n << ',' << fmt_num(r.mean) << ',' << fmt_num(r.var) << ','
       << (r.mean_exact ? rational_string(*r.mean_exact) : "") << ','
       << (r.var_exact ? rational_string(*r.var_exact) : "") << '\n';
  }
  return os.str();
}

double cube_maxima_mean(int d, long n) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  if (n < 0) throw DomainError("n must be nonnegative");
  if (n == 0) return 0.0;
  std::vector<double> e(static_cast<std::size_t>(n), 1.0);
  for (int level = 2; level <= d; ++level) {
    specfun::CompensatedSum s;
    for (long k = 1; k <= n; ++k) {
      s.add(e[static_cast<std::size_t>(k - 1)] / static_cast<double>(k));
      e[static_cast<std::size_t>(k - 1)] = s.value();
    }
  }
  return e.back();
}

}  // namespace recordlab
