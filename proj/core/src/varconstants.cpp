#include "recordlab/varconstants.hpp"

#include "recordlab/error.hpp"
#include "recordlab/format.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <span>
#include <sstream>

namespace recordlab {

using specfun::Acceleration;
using specfun::binomial;
using specfun::ln_gamma;
using specfun::ln_gamma_ratio;
using specfun::SeriesValue;
using specfun::SumOptions;

namespace {

void check_d(int d) {
  if (d < 2) throw DomainError("constants are defined for d >= 2");
  if (d > 40) throw DomainError("constants are validated only for small d (d <= 40)");
}

double sgn(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

SumOptions alternating(const ConstOptions& opt, long first) {
  SumOptions s;
  s.eps = opt.eps;
  s.precision = opt.precision;
  s.method = Acceleration::Euler;
  s.first_index = first;
  return s;
}

SumOptions power_law(const ConstOptions& opt, long first, double decay) {
  SumOptions s;
  s.eps = opt.eps;
  s.precision = opt.precision;
  s.method = opt.tail == Acceleration::HurwitzTail ? Acceleration::HurwitzTail : Acceleration::Richardson;
  s.decay = decay;
  s.first_index = first;
  return s;
}

// Σ c_i·x_i with error bound Σ |c_i|·err_i.
struct Combo {
  double value = 0.0;
  double err = 0.0;
  long terms = 0;
  void add(double c, const SeriesValue& s) {
    value += c * s.value;
    err += std::abs(c) * s.err;
    terms += s.terms_used;
  }
  SeriesValue result(double rounding_scale = 0.0) const {
    return {value, err + 1e-16 * rounding_scale, terms};
  }
};

// Π_{i=0}^{n−1} 1/(base + i)
double inv_rising(double base, int n) {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p /= base + i;
  return p;
}


using Ext = boost::multiprecision::cpp_bin_float_50;

// pFq(α; β; z) for z = 1/2 by direct summation, terms below 1e-45 of the sum.
Ext hyp_half(std::span<const Ext> al, std::span<const Ext> be) {
  Ext sum = 1, t = 1;
  for (long j = 0; j < 400; ++j) {
    Ext r = Ext(1) / (2 * (j + 1));
    for (const Ext& a : al) r *= a + j;
    for (const Ext& b : be) r /= b + j;
    t *= r;
    sum += t;
    if (abs(t) < Ext(1e-45) * abs(sum)) return sum;
  }
  throw NumericError("vtilde: 2F1 at 1/2 did not converge");
}

// pFq(α; β; −1) = Σ(−1)^j a_j by the Cohen–Villegas–Zagier weights, error ≈ 5.8^{−n}.
Ext hyp_minus_one(std::span<const Ext> al, std::span<const Ext> be) {
  constexpr int n = 72;
  std::array<Ext, n> a;
  a[0] = 1;
  for (int j = 0; j + 1 < n; ++j) {
    Ext r = Ext(1) / (j + 1);
    for (const Ext& x : al) r *= x + j;
    for (const Ext& y : be) r /= y + j;
    a[static_cast<std::size_t>(j) + 1] = a[static_cast<std::size_t>(j)] * r;
  }
  Ext dn = pow(3 + sqrt(Ext(8)), n);
  dn = (dn + 1 / dn) / 2;
  Ext b = -1, c = -dn, sum = 0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * a[static_cast<std::size_t>(k)];
    b = b * Ext(k + n) * Ext(k - n) / (Ext(k) + Ext(0.5)) / Ext(k + 1);
  }
  return sum / dn;
}

Ext ext_factorial(int n) {
  Ext f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

SeriesValue ext_value(const Ext& v, const Ext& scale) {
  const double x = v.convert_to<double>();
  // 50-digit arithmetic on terms of size `scale`, then rounding to double.
  const double err = (scale * Ext(1e-40)).convert_to<double>() + 0.5 * std::abs(x) * 2.220446049250313e-16;
  return {x, err, 0};
}

// ṽ_d with every hypergeometric value and the whole combination carried in
// 50-digit arithmetic; the binomial-weighted sum cancels heavily for large d.
ConstantReport vtilde_extended(int d) {
  ConstantReport r;
  r.d = d;
  r.name = ConstantName::VTilde;
  const Ext dd = d;
  const Ext g = boost::math::tgamma(Ext(1) / dd);
  const Ext pre = g * pow(Ext(2), -Ext(1) / dd);
  std::vector<Ext> f(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const std::array<Ext, 2> al{1 + 1 / dd, Ext(1)};
    const std::array<Ext, 1> be{1 + (j + 1) / dd};
    f[static_cast<std::size_t>(j)] = hyp_half(al, be);
  }
  auto bin = [](int n, int k) { return ext_factorial(n) / (ext_factorial(k) * ext_factorial(n - k)); };
  Ext J0 = 0, scale0 = 0;
  for (int l = 0; l < d; ++l) {
    Ext t = pre * bin(d - 1, l) * sgn(l) / (l + 1) * f[static_cast<std::size_t>(l)];
    J0 += t;
    scale0 += abs(t);
  }
  r.components.push_back({"J0", ext_value(J0, scale0)});
  Ext total = g - J0, scale = abs(g) + scale0;
  const Ext fact_d1 = ext_factorial(d - 1);
  for (int k = 0; k <= d - 2; ++k) {
    Ext jpp = 0, spp = 0;
    for (int j = k + 1; j < d; ++j) {
      Ext t = sgn(k) * pre * bin(d - 1, j) * sgn(j) / (j + 1) * f[static_cast<std::size_t>(j)];
      jpp += t;
      spp += abs(t);
    }
    Ext jp = 0, sp = 0;
    for (int j = 0; j <= d - 2 - k; ++j)
      for (int l = 0; l <= k; ++l) {
        const std::array<Ext, 3> al{1 + 1 / dd, (k + j + 2) / dd, Ext(1)};
        const std::array<Ext, 2> be{1 + (l + j + 1) / dd, 1 + (k + j + 2) / dd};
        Ext coef = 2 * g * fact_d1 * sgn(j + l) /
                   (ext_factorial(j) * ext_factorial(d - 2 - k - j) * ext_factorial(l) * ext_factorial(k - l)) /
                   ((l + j + 1) * (k + j + 2));
        Ext t = coef * hyp_minus_one(al, be);
        jp += t;
        sp += abs(t);
      }
    r.components.push_back({"Jp" + std::to_string(k + 1), ext_value(jp, sp)});
    r.components.push_back({"Jpp" + std::to_string(k + 1), ext_value(jpp, spp)});
    const Ext b = bin(d, k + 1);
    total += b * (jp + jpp);
    scale += b * (sp + spp);
  }
  r.value = ext_value(total, scale);
  return r;
}

}  // namespace

std::string to_string(ConstantName c) {
  switch (c) {
    case ConstantName::V: return "v";
    case ConstantName::VTilde: return "vtilde";
    case ConstantName::K: return "K";
  }
  return "?";
}

ConstantName parse_constant_name(const std::string& s) {
  if (s == "v") return ConstantName::V;
  if (s == "vtilde" || s == "vt") return ConstantName::VTilde;
  if (s == "K" || s == "k") return ConstantName::K;
  throw DomainError("unknown constant '" + s + "'");
}

const SeriesValue& ConstantReport::component(const std::string& key) const {
  for (const NamedValue& c : components)
    if (c.name == key) return c.value;
  throw DomainError("no component named '" + key + "'");
}

SeriesValue i_d0_series(int d, const ConstOptions& opt) {
  check_d(d);
  const double dd = d;
  auto term = [&](long j) {
    return sgn(static_cast<int>(j % 2)) * std::exp(ln_gamma_ratio(j + 1.0, 1.0 / dd, 1.0)) *
           inv_rising(dd * j + 1.0, d);
  };
  SeriesValue s = specfun::euler_sum(term, alternating(opt, 0));
  const double pre = std::exp(ln_gamma(dd - 1.0));
  return {pre * s.value, pre * s.err, s.terms_used};
}

SeriesValue i_dd_series(int d, const ConstOptions& opt) {
  check_d(d);
  const double dd = d;
  auto a = [&](long j) { return inv_rising(dd * j - dd, d) / static_cast<double>(j); };
  auto b = [&](long j) {
    return sgn(static_cast<int>(j % 2)) * std::exp(ln_gamma_ratio(j - 1.0, 1.0 / dd, 1.0)) *
           inv_rising(dd * j - dd + 1.0, d);
  };
  SeriesValue sa = specfun::euler_sum(a, power_law(opt, 2, dd + 1.0));
  SeriesValue sb = specfun::euler_sum(b, alternating(opt, 2));
  const double g = std::exp(ln_gamma(dd - 1.0));
  Combo c;
  c.add(g * std::tgamma(1.0 / dd), sa);
  c.add(-g, sb);
  return c.result();
}

ConstantReport v_const(int d, const ConstOptions& opt) {
  check_d(d);
  const double dd = d;
  ConstantReport r;
  r.d = d;
  r.name = ConstantName::V;

  SeriesValue i0 = i_d0_series(d, opt);
  SeriesValue idd = i_dd_series(d, opt);

  Combo c1, c3;
  for (int l = 0; l <= d - 2; ++l) {
    const double lf = static_cast<double>(l);
    auto t1 = [&](long j) {
      double lr = 0.0;
      for (int i = 0; i < d; ++i) lr += std::log1p((lf + 1.0 - dd) / (dd * j + dd - i));
      return std::exp(ln_gamma_ratio(j + 1.0, 1.0 / dd, (lf + 1.0) / dd)) / (j + 1.0) * std::expm1(lr);
    };
    auto t3 = [&](long j) {
      double lr = 0.0;
      for (int i = 0; i < d; ++i) lr += std::log1p((lf + 1.0 - dd) / (dd * j + dd - lf - 1.0 - i));
      return std::exp(ln_gamma_ratio(j + 1.0, -lf / dd, 0.0)) / (dd * j + dd - lf - 1.0) * std::expm1(lr);
    };
    const double decay = 2.0 + lf / dd;
    const double base = binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(l)) * std::tgamma((lf + 1.0) / dd);
    c1.add(sgn(d) / (dd * (dd - 1.0)) * sgn(l) * base, specfun::euler_sum(t1, power_law(opt, 1, decay)));
    c3.add(sgn(d) / (dd - 1.0) * sgn(l + 1) * base, specfun::euler_sum(t3, power_law(opt, 1, decay)));
  }
  SeriesValue C1 = c1.result(), C3 = c3.result();
  SeriesValue C2{0.0, 0.0, 0};
  if (d % 2 == 0) {
    C2.value = 2.0 * (i0.value - std::tgamma(1.0 + 1.0 / dd) / (dd * (dd - 1.0)));
    C2.err = 2.0 * i0.err;
  }
  r.components = {{"I0", i0}, {"Idd", idd}, {"C1", C1}, {"C2", C2}, {"C3", C3}};

  const double lead = dd / (dd - 1.0) * std::tgamma(1.0 / dd);
  const double k = 2.0 * dd * dd;
  double C = C1.value + C2.value + C3.value + idd.value - i0.value;
  r.value.value = lead + k * C;
  r.value.err = k * (C1.err + C2.err + C3.err + idd.err + i0.err) + 4e-16 * std::abs(r.value.value);
  r.value.terms_used = C1.terms_used + C3.terms_used + i0.terms_used + idd.terms_used;
  return r;
}

SeriesValue j_d0_series(int d, double eps) {
  check_d(d);
  const double dd = d;
  Combo c;
  for (int l = 0; l < d; ++l) {
    std::array<double, 2> al{1.0 + 1.0 / dd, 1.0};
    std::array<double, 1> be{1.0 + (l + 1.0) / dd};
    c.add(binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(l)) * sgn(l) / (l + 1.0),
          specfun::p_f_q(al, be, 0.5, eps));
  }
  const double pre = std::tgamma(1.0 / dd) * std::pow(2.0, -1.0 / dd);
  SeriesValue s = c.result();
  return {pre * s.value, pre * s.err, s.terms_used};
}

ConstantReport vtilde_const(int d, const ConstOptions& opt) {
  check_d(d);
  if (opt.precision == specfun::Precision::DoubleDouble) return vtilde_extended(d);
  const double dd = d;
  const double g = std::tgamma(1.0 / dd);
  const double feps = std::max(opt.eps * 1e-2, 1e-16);
  ConstantReport r;
  r.d = d;
  r.name = ConstantName::VTilde;

  // ₂F₁(1+1/d, 1; 1+(j+1)/d; 1/2), shared by J0 and J″.
  std::vector<SeriesValue> f(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    std::array<double, 2> al{1.0 + 1.0 / dd, 1.0};
    std::array<double, 1> be{1.0 + (j + 1.0) / dd};
    f[static_cast<std::size_t>(j)] = specfun::p_f_q(al, be, 0.5, feps);
  }
  const double pre = g * std::pow(2.0, -1.0 / dd);
  Combo j0;
  for (int l = 0; l < d; ++l)
    j0.add(pre * binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(l)) * sgn(l) / (l + 1.0), f[static_cast<std::size_t>(l)]);
  SeriesValue J0 = j0.result();
  r.components.push_back({"J0", J0});

  Combo total;
  total.value = g - J0.value;
  total.err = J0.err;
  const double fact_d1 = std::tgamma(dd);
  for (int k = 0; k <= d - 2; ++k) {
    Combo jpp;
    for (int j = k + 1; j < d; ++j)
      jpp.add(sgn(k) * pre * binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(j)) * sgn(j) / (j + 1.0),
              f[static_cast<std::size_t>(j)]);
    Combo jp;
    for (int j = 0; j <= d - 2 - k; ++j) {
      for (int l = 0; l <= k; ++l) {
        std::array<double, 3> al{1.0 + 1.0 / dd, (k + j + 2.0) / dd, 1.0};
        std::array<double, 2> be{1.0 + (l + j + 1.0) / dd, 1.0 + (k + j + 2.0) / dd};
        SeriesValue h = specfun::p_f_q(al, be, -1.0, opt.eps);
        double coef = 2.0 * g * fact_d1 * sgn(j + l) /
                      (std::tgamma(j + 1.0) * std::tgamma(d - 1.0 - k - j) * std::tgamma(l + 1.0) *
                       std::tgamma(k - l + 1.0)) /
                      ((l + j + 1.0) * (k + j + 2.0));
        jp.add(coef, h);
      }
    }
    SeriesValue Jp = jp.result(), Jpp = jpp.result();
    r.components.push_back({"Jp" + std::to_string(k + 1), Jp});
    r.components.push_back({"Jpp" + std::to_string(k + 1), Jpp});
    const double b = binomial(static_cast<unsigned>(d), static_cast<unsigned>(k + 1));
    total.add(b, Jp);
    total.add(b, Jpp);
  }
  r.value = total.result(4.0 * std::abs(total.value));
  return r;
}

ConstantReport k_const(int d, const ConstOptions& opt) {
  check_d(d);
  const double dd = d;
  ConstantReport r;
  r.d = d;
  r.name = ConstantName::K;
  Combo total;
  for (int m = 0; m <= d - 2; ++m) {
    Combo km;
    const double mf = m;
    for (int l = 0; l <= d - 2 - m; ++l) {
      const double lf = l;
      // The paired difference T1 − T2 = T2·expm1(ln T1 − ln T2).
      auto term = [&](long jj) {
        const double j = static_cast<double>(jj);
        const double lt2 = ln_gamma_ratio(j + 1.0, 1.0 / dd, (lf + 1.0) / dd);
        double L = ln_gamma_ratio(j + 1.0, -lf / dd, 0.0) - lt2;
        double t2 = std::exp(lt2);
        for (int i = 0; i <= m; ++i) {
          L += std::log1p((lf + 1.0) / (dd * j + dd - lf - i - 1.0));
          t2 /= dd * j + dd - i;
        }
        return t2 * std::expm1(L);
      };
      const double coef = binomial(static_cast<unsigned>(d - 2), static_cast<unsigned>(m)) *
                          binomial(static_cast<unsigned>(d - 2 - m), static_cast<unsigned>(l)) * sgn(d - 2 - m - l) *
                          std::tgamma(mf + 1.0) * std::tgamma((lf + 1.0) / dd) / (dd * dd);
      km.add(coef, specfun::euler_sum(term, power_law(opt, 0, lf / dd + mf + 2.0)));
    }
    SeriesValue K = km.result();
    r.components.push_back({"K" + std::to_string(m), K});
    total.add(1.0, K);
  }
  r.value = total.result(4.0 * std::abs(total.value));
  return r;
}

ConstantReport constant(ConstantName name, int d, const ConstOptions& opt) {
  ConstantReport r;
  switch (name) {
    case ConstantName::V: r = v_const(d, opt); break;
    case ConstantName::VTilde: r = vtilde_const(d, opt); break;
    case ConstantName::K: r = k_const(d, opt); break;
  }
  if (opt.with_oracle) {
    if (name == ConstantName::K && d <= 8) r.oracle = oracle_integral(OracleName::K, d);
  }
  return r;
}

SeriesValue oracle_integral(OracleName name, int d, double eps) {
  check_d(d);
  const double dd = d;
  const double g = std::tgamma(1.0 / dd);
  switch (name) {
    case OracleName::I0: {
      auto f = [&](double x) {
        double xd = std::pow(x, dd);
        double num = -std::expm1(-std::log1p(xd) / dd);
        return std::pow(1.0 - x, dd - 1.0) * (xd > 0.0 ? num / xd : 1.0 / dd);
      };
      SeriesValue s = specfun::quad1d(f, 0.0, 1.0, eps);
      return {g / (dd - 1.0) * s.value, g / (dd - 1.0) * s.err, s.terms_used};
    }
    case OracleName::Idd: {
      // With s = 1/(1+t) the bracket is s^{d+1}[(1+s^d)^{−1/d} − (1−s^{d−1})/(1−s^d)],
      // written so that nothing cancels as s → 0.
      auto f = [&](double s) {
        double geo = 0.0;
        for (int i = d - 1; i >= 0; --i) geo = geo * s + 1.0;
        double sd1 = std::pow(s, dd - 1.0);
        return std::pow(1.0 - s, dd - 1.0) * (std::expm1(-std::log1p(sd1 * s) / dd) + sd1 / geo);
      };
      SeriesValue r = specfun::quad1d(f, 0.0, 1.0, eps);
      double pre = g / (dd - 1.0);
      return {pre * r.value, pre * r.err, r.terms_used};
    }
    case OracleName::J0: {
      auto f = [&](double x) { return std::pow(1.0 - x, dd - 1.0) * std::pow(1.0 + std::pow(x, dd), -1.0 - 1.0 / dd); };
      SeriesValue s = specfun::quad1d(f, 0.0, 1.0, eps);
      return {2.0 * g * s.value, 2.0 * g * s.err, s.terms_used};
    }
    case OracleName::K: {
      if (d > 8) throw DomainError("oracle_integral: the K double integral is limited to d <= 8");
      const double a = 1.0 / dd;
      // u^{−1−a}v^{−1−a}(1/u+1/v−1)^{−1−a} = (u+v−uv)^{−1−a}. The substitution
      // u = x^m, v = y^m removes the singularity at the origin.
      const double m = 2.0 * dd;
      auto f = [&](double x, double y) {
        double u = std::pow(x, m), v = std::pow(y, m);
        if (u == 0.0 || v == 0.0) return 0.0;
        double base = 1.0 / (x * x) + 1.0 / (y * y) - 2.0;
        double p = d == 2 ? 1.0 : std::pow(base, dd - 2.0);
        return m * m * (u / x) * (v / y) * p * std::pow(u + v - u * v, -1.0 - a);
      };
      SeriesValue s = specfun::quad2d(f, 0.0, 1.0, 0.0, 1.0, eps);
      double pre = g / (dd * dd * dd * dd);
      return {pre * s.value, pre * s.err, s.terms_used};
    }
  }
  throw DomainError("oracle_integral: unknown integral");
}

std::string constants_csv(const std::vector<ConstantsRow>& rows, const std::vector<ConstantName>& which) {
  std::ostringstream os;
  os << "d";
  for (ConstantName c : which) os << ',' << to_string(c) << ',' << to_string(c) << "_err," << to_string(c) << "_10";
  os << '\n';
  for (const ConstantsRow& row : rows) {
    os << row.d;
    for (ConstantName c : which) {
      const ConstantReport* rep = nullptr;
      for (const ConstantReport& r : row.reports)
        if (r.name == c) rep = &r;
      if (!rep) {
        os << ",,,";
        continue;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10f", rep->value.value);
      os << ',' << fmt_num(rep->value.value) << ',' << fmt_num(rep->value.err) << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace recordlab
