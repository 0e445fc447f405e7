#include "recordlab/asymptotics.hpp"

#include "recordlab/charpoly.hpp"
#include "recordlab/error.hpp"
#include "recordlab/format.hpp"
#include "recordlab/varconstants.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace recordlab {

using specfun::binomial;
using specfun::cplx;
using specfun::polygamma;
using std::numbers::egamma;
using std::numbers::pi;

namespace {

double sgn(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double evaluate(const std::vector<AsymTerm>& terms, double n) {
  double s = 0.0;
  for (const AsymTerm& t : terms) s += t.coefficient * std::pow(n, t.exponent) * (t.log ? std::log(n) : 1.0);
  return s;
}

void check_n(double n) {
  if (!(n > 1.0) || !std::isfinite(n)) throw DomainError("asymptotic forms need finite n > 1");
}

void harmonic_numbers(int d, double& h1, double& h2, double& h3) {
  h1 = h2 = h3 = 0.0;
  for (int i = d; i >= 1; --i) {
    h1 += 1.0 / i;
    h2 += 1.0 / (double(i) * i);
    h3 += 1.0 / (double(i) * i * i);
  }
}

// Σ_{j≥1} r_j(H_{dj+d}−H_{dj})/(1−r_j)² with r_j = d!/((dj+1)⋯(dj+d)); equals
// the printed Σ (dj+1)⋯(dj+d)(H_{dj+d}−H_{dj})/((dj+1)⋯(dj+d)−d!)² times d!.
specfun::SeriesValue c2_series(int d) {
  const double dd = d;
  const double lf = std::lgamma(dd + 1.0);
  auto term = [&](long jj) {
    const double j = static_cast<double>(jj);
    double r = std::exp(lf - specfun::ln_gamma_ratio(dd * j + 1.0, dd, 0.0));
    double dh = 0.0;
    for (int i = d; i >= 1; --i) dh += 1.0 / (dd * j + i);
    return r * dh / ((1.0 - r) * (1.0 - r));
  };
  specfun::SumOptions opt;
  opt.eps = 1e-14;
  opt.first_index = 1;
  opt.decay = dd + 1.0;
  opt.method = d + 1 <= 30 ? specfun::Acceleration::Richardson : specfun::Acceleration::Direct;
  return specfun::euler_sum(term, opt);
}

}  // namespace

std::string to_string(ErrorClass e) {
  switch (e) {
    case ErrorClass::InvPowerD: return "O(n^(-1/d))";
    case ErrorClass::LittleO: return "o(1) relative";
    case ErrorClass::PowerEps: return "O(n^(-eps))";
    case ErrorClass::Exponential: return "exponentially small";
    case ErrorClass::Exact: return "exact";
  }
  return "?";
}

double harmonic_real(double x) {
  if (!(x > -1.0)) throw DomainError("harmonic_real: x must exceed -1");
  return polygamma(0, x + 1.0) + egamma;
}

AsymptoticMoment pareto_mean_asym(int d, double n) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  check_n(n);
  AsymptoticMoment m;
  m.n = n;
  const double dd = d;
  for (int j = 0; j <= d - 2; ++j)
    m.terms.push_back({binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(j)) * sgn(j) *
                           std::tgamma((j + 1.0) / dd) * dd / (dd - 1.0 - j),
                       (dd - 1.0 - j) / dd, false});
  m.terms.push_back({sgn(d - 1), 0.0, true});
  m.terms.push_back({sgn(d - 1) * egamma, 0.0, false});
  m.value = evaluate(m.terms, n);
  m.error = ErrorClass::InvPowerD;
  return m;
}

AsymptoticMoment maxima_mean_asym(int d, double n) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  check_n(n);
  AsymptoticMoment m;
  m.n = n;
  const double dd = d;
  for (int j = 0; j < d; ++j)
    m.terms.push_back({binomial(static_cast<unsigned>(d - 1), static_cast<unsigned>(j)) * sgn(j) *
                           std::tgamma((j + 1.0) / dd),
                       (dd - 1.0 - j) / dd, false});
  m.value = evaluate(m.terms, n);
  m.error = d == 1 ? ErrorClass::Exact : ErrorClass::InvPowerD;
  return m;
}

ChainParams chain_params_simplex(int d) {
  if (d < 2) throw DomainError("chain parameters need d >= 2");
  Spectrum s = char_zeros(d, 1.0);
  return chain_params_simplex(d, s.lambdas);
}

ChainParams chain_params_simplex(int d, std::span<const std::complex<double>> lambdas) {
  if (d < 2) throw DomainError("chain parameters need d >= 2");
  if (lambdas.size() != static_cast<std::size_t>(d - 1))
    throw DomainError("expected d-1 nontrivial zeros");
  const double dd = d;
  double h1, h2, h3;
  harmonic_numbers(d, h1, h2, h3);
  ChainParams p;
  p.d = d;
  p.kind = ModelKind::Simplex;
  p.mu = 1.0 / (dd * h1);
  p.sigma2 = h2 / (dd * h1 * h1 * h1);

  cplx s0{0.0, 0.0}, s1{0.0, 0.0};
  for (const auto& l : lambdas) {
    s0 += polygamma(0, -l / dd);
    s1 += polygamma(1, -l / dd);
  }
  for (int l = 1; l < d; ++l) {
    s0 -= polygamma(0, l / dd);
    s1 -= polygamma(1, l / dd);
  }
  const cplx c1 = s0 / (dd * h1);
  specfun::SeriesValue ser = c2_series(d);
  p.series = ser.value;
  p.series_err = ser.err;
  const cplx c2 = 1.0 / 6.0 + pi * pi / (6.0 * dd * dd * h1 * h1) - 2.0 * h3 / (3.0 * h1 * h1 * h1) +
                  h2 * h2 / (2.0 * h1 * h1 * h1 * h1) + s1 / (dd * dd * h1 * h1) + c1 * h2 / (h1 * h1) -
                  2.0 / h1 * ser.value;
  p.c1 = c1.real();
  p.c2 = c2.real();
  p.c1_imag = std::abs(c1.imag());
  p.c2_imag = std::abs(c2.imag());
  return p;
}

ChainParams chain_params_hypercube(int d) {
  if (d < 2) throw DomainError("chain parameters need d >= 2");
  std::vector<cplx> roots;
  for (int l = 1; l < d; ++l) roots.push_back(std::polar(1.0, 2.0 * pi * l / d));
  return chain_params_hypercube(d, roots);
}

ChainParams chain_params_hypercube(int d, std::span<const std::complex<double>> roots) {
  if (d < 2) throw DomainError("chain parameters need d >= 2");
  if (roots.size() != static_cast<std::size_t>(d - 1)) throw DomainError("expected d-1 nontrivial roots of unity");
  const double dd = d;
  ChainParams p;
  p.d = d;
  p.kind = ModelKind::Hypercube;
  p.mu = 1.0 / dd;
  p.sigma2 = 1.0 / (dd * dd);
  cplx s0{0.0, 0.0}, s2{0.0, 0.0};
  for (const auto& w : roots) {
    const cplx z = 1.0 - w;
    const cplx psi = polygamma(0, z);
    s0 += psi;
    s2 += psi + (1.0 - 2.0 * w) * polygamma(1, z);
  }
  const cplx c1 = egamma + s0 / dd;
  const cplx c2 = egamma / dd - pi * pi / (6.0 * dd) + s2 / (dd * dd);
  p.c1 = c1.real();
  p.c2 = c2.real();
  p.c1_imag = std::abs(c1.imag());
  p.c2_imag = std::abs(c2.imag());
  return p;
}

AsymptoticMoment chain_mean_asym(const Model& model, double n) {
  check_n(n);
  AsymptoticMoment m;
  m.n = n;
  m.error = ErrorClass::PowerEps;
  if (model.d == 1) {
    // Classical records: H_n exactly.
    m.terms = {{1.0, 0.0, true}, {egamma, 0.0, false}};
    m.value = harmonic_real(n);
    return m;
  }
  ChainParams p = model.kind == ModelKind::Simplex ? chain_params_simplex(model.d) : chain_params_hypercube(model.d);
  if (model.kind == ModelKind::Simplex) {
    // H_n = log n + γ + O(1/n)
    m.terms = {{p.mu, 0.0, true}, {p.mu * egamma + p.c1, 0.0, false}};
    m.value = p.mu * harmonic_real(n) + p.c1;
  } else {
    m.terms = {{p.mu, 0.0, true}, {p.c1, 0.0, false}};
    m.value = evaluate(m.terms, n);
  }
  return m;
}

AsymptoticMoment chain_var_asym(const Model& model, double n) {
  check_n(n);
  AsymptoticMoment m;
  m.n = n;
  m.error = ErrorClass::PowerEps;
  if (model.d == 1) {
    m.terms = {{1.0, 0.0, true}, {egamma - pi * pi / 6.0, 0.0, false}};
    m.value = evaluate(m.terms, n);
    return m;
  }
  ChainParams p = model.kind == ModelKind::Simplex ? chain_params_simplex(model.d) : chain_params_hypercube(model.d);
  if (model.kind == ModelKind::Simplex) {
    m.terms = {{p.sigma2, 0.0, true}, {p.sigma2 * egamma + p.c2, 0.0, false}};
    m.value = p.sigma2 * harmonic_real(n) + p.c2;
  } else {
    m.terms = {{p.sigma2, 0.0, true}, {p.c2, 0.0, false}};
    m.value = evaluate(m.terms, n);
  }
  return m;
}

DomLimits dom_limits(int d) {
  if (d < 1) throw DomainError("dimension must be at least 1");
  DomLimits r;
  r.d = d;
  const double dd = d;
  r.scale = std::sqrt(pi * dd) * std::pow(4.0, -dd);
  r.pair_term = std::exp(2.0 * std::lgamma(dd + 1.0) - std::lgamma(2.0 * dd + 1.0));
  if (d == 1) {
    r.simplex_diverges = r.cube_diverges = true;
    r.simplex_mean = r.simplex_var = r.cube_mean = r.cube_var = std::numeric_limits<double>::infinity();
    return r;
  }
  r.cube_mean = specfun::zeta(dd);
  r.cube_var = r.cube_mean - specfun::zeta(2.0 * dd);

  // a_k = (d!)^kΓ(k)^d/Γ(dk+1) falls off geometrically (ratio → d!/d^d).
  const double lf = std::lgamma(dd + 1.0);
  specfun::CompensatedSum mean, second;
  double hk = 0.0;  // H_{k−1}^{(d)}
  long k = 1;
  for (; k < 100000; ++k) {
    const double kk = static_cast<double>(k);
    const double a = std::exp(kk * lf + dd * std::lgamma(kk) - std::lgamma(dd * kk + 1.0));
    mean.add(a);
    if (k >= 2) second.add(2.0 * a * hk);
    hk += std::pow(kk, -dd);
    if (k > 3 && a < 1e-18 * mean.value()) break;
  }
  r.terms = k;
  r.simplex_mean = mean.value();
  r.simplex_var = second.value() + r.simplex_mean - r.simplex_mean * r.simplex_mean;
  return r;
}

double record_variance_asym(Statistic s, const Model& model, double n) {
  check_n(n);
  const int d = model.d;
  const double dd = d;
  const bool simplex = model.kind == ModelKind::Simplex;
  switch (s) {
    case Statistic::Pareto:
      if (d == 1) return harmonic_real(n) - (specfun::zeta(2.0) - specfun::hurwitz_zeta(2.0, n + 1.0));
      if (!simplex) throw DomainError("hypercube Pareto variance constant is not available in closed form");
      return v_const(d).value.value * std::pow(n, 1.0 - 1.0 / dd);
    case Statistic::Maxima:
      if (d == 1) return 0.0;
      if (!simplex) throw DomainError("hypercube maxima variance constant is not available in closed form");
      return vtilde_const(d).value.value * std::pow(n, 1.0 - 1.0 / dd);
    case Statistic::Chain:
      return chain_var_asym(model, n).value;
    case Statistic::Dominating: {
      if (d == 1) return harmonic_real(n) - (specfun::zeta(2.0) - specfun::hurwitz_zeta(2.0, n + 1.0));
      if (simplex) return dom_limits(d).simplex_var;
      auto hs = [&](double p) { return specfun::zeta(p) - specfun::hurwitz_zeta(p, n + 1.0); };
      return hs(dd) - hs(2.0 * dd);
    }
  }
  throw DomainError("unknown statistic");
}

std::string summary_table_json(int d) {
  if (d < 2) throw DomainError("summary table needs d >= 2");
  using nlohmann::ordered_json;
  const double dd = d;
  double h1, h2, h3;
  harmonic_numbers(d, h1, h2, h3);
  const double fact = std::tgamma(dd + 1.0);
  const DomLimits dom = dom_limits(d);
  const double vd = v_const(d).value.value;
  const double vt = vtilde_const(d).value.value;

  auto form = [](const std::string& expr, std::optional<double> coef, const std::string& scale, ErrorClass err) {
    ordered_json j;
    j["expression"] = expr;
    j["coefficient"] = coef ? ordered_json(round15(*coef)) : ordered_json(nullptr);
    j["scale"] = scale;
    j["error"] = to_string(err);
    return j;
  };
  auto entry = [&](const std::string& record, const std::string& model, ordered_json mean, ordered_json var) {
    ordered_json j;
    j["record"] = record;
    j["model"] = model;
    j["mean"] = std::move(mean);
    j["variance"] = std::move(var);
    return j;
  };

  ordered_json out;
  out["d"] = d;
  ordered_json rows = ordered_json::array();
  rows.push_back(entry("dominating", "cube", form("H_n^(d)", dom.cube_mean, "limit", ErrorClass::Exact),
                       form("H_n^(d) - H_n^(2d)", dom.cube_var, "limit", ErrorClass::Exact)));
  rows.push_back(entry("dominating", "simplex", form("sum_k (d!)^k Gamma(k)^d / Gamma(dk+1)", dom.simplex_mean, "limit",
                                                     ErrorClass::Exponential),
                       form("bounded series", dom.simplex_var, "limit", ErrorClass::Exponential)));
  rows.push_back(entry("chain", "cube", form("(1/d) log n", 1.0 / dd, "log n", ErrorClass::PowerEps),
                       form("(1/d^2) log n", 1.0 / (dd * dd), "log n", ErrorClass::PowerEps)));
  rows.push_back(entry("chain", "simplex", form("log n / (d H_d)", 1.0 / (dd * h1), "log n", ErrorClass::PowerEps),
                       form("H_d^(2) log n / (d H_d^3)", h2 / (dd * h1 * h1 * h1), "log n", ErrorClass::PowerEps)));
  rows.push_back(entry("pareto", "cube", form("(log n)^d / d!", 1.0 / fact, "(log n)^d", ErrorClass::LittleO),
                       form("(1/d! + kappa_(d+1)) (log n)^d", std::nullopt, "(log n)^d", ErrorClass::LittleO)));
  rows.push_back(entry("pareto", "simplex",
                       form("m_d n^((d-1)/d), m_d = d Gamma(1/d)/(d-1)", dd / (dd - 1.0) * std::tgamma(1.0 / dd),
                            "n^((d-1)/d)", ErrorClass::LittleO),
                       form("v_d n^((d-1)/d)", vd, "n^((d-1)/d)", ErrorClass::LittleO)));
  rows.push_back(entry("maxima", "cube",
                       form("as Pareto records in [0,1]^(d-1): (log n)^(d-1) / (d-1)!", 1.0 / std::tgamma(dd),
                            "(log n)^(d-1)", ErrorClass::LittleO),
                       form("as Pareto records in [0,1]^(d-1)", std::nullopt, "(log n)^(d-1)", ErrorClass::LittleO)));
  rows.push_back(entry("maxima", "simplex", form("Gamma(1/d) n^((d-1)/d)", std::tgamma(1.0 / dd), "n^((d-1)/d)",
                                                 ErrorClass::LittleO),
                       form("vtilde_d n^((d-1)/d)", vt, "n^((d-1)/d)", ErrorClass::LittleO)));
  out["rows"] = std::move(rows);
  return out.dump(2);
}

}  // namespace recordlab
