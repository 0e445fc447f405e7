#include "validate.hpp"

#include "recordlab/asymptotics.hpp"
#include "recordlab/charpoly.hpp"
#include "recordlab/error.hpp"
#include "recordlab/exactlaws.hpp"
#include "recordlab/format.hpp"
#include "recordlab/varconstants.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace recordlab::cli {

namespace {

using std::numbers::egamma;
using std::numbers::pi;

// Published tables, d = 2..12.
constexpr const char* kV[] = {
    "2.8612635493111788253114379",  "3.2252436444055768966059392",  "3.9779727442194552929264760",
    "4.8452739171626114222650057",  "5.7634995321965686481277416",  "6.7086512250865903636434742",
    "7.6695504435246650470424808",  "8.6403279742082872493100067",  "9.6176475521137557394420940",
    "10.5994978766569516309876869", "11.5846078314604097779437163"};
constexpr const char* kVTilde[] = {
    "0.6846889279500361741809957", "1.4821731873405836860111369", "2.3582437612024869374228054",
    "3.2777390059794912668480858", "4.2223109450770677999834338", "5.1822076686160784851729967",
    "6.1519629023774744550828039", "7.1283513658433605279329089", "8.1093823221158498252777117",
    "9.0937774697866808969470616", "10.080686465197330811316376"};
constexpr const char* kK[] = {
    "0.3071428473569440251848954", "0.2128824684732209969380676", "0.1949467028230331819040460",
    "0.2072321512996714585493769", "0.2433117024518367255488428", "0.3074456566078932224237300",
    "0.4112701058903858387359349", "0.5757168456672436432808087", "0.8361582236771160023316115",
    "1.2517963251140708648031485", "1.9220104035188473601285304"};

// Plotted limits of E[Z_n] and V[Z_n] for the simplex, d = 2..7 (axis unit 3.058).
constexpr double kFigUnit = 3.058;
constexpr double kFigMean[] = {3.773, 3.227, 3.103, 3.070, 3.061, 3.059};
constexpr double kFigVar[] = {0.669, 0.164, 0.044, 0.011, 0.002, 0.000};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      ++failed_;
      if (failed_ <= 3) failures_ << (failed_ > 1 ? "; " : "") << what;
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  bool ok() const { return failed_ == 0; }
  std::string detail() const {
    std::ostringstream os;
    os << (total_ - failed_) << "/" << total_ << " checks";
    if (!notes_.str().empty()) os << "; " << notes_.str();
    if (failed_ > 0) os << "; failed: " << failures_.str() << (failed_ > 3 ? "; ..." : "");
    return os.str();
  }

 private:
  long total_ = 0, failed_ = 0;
  std::ostringstream failures_, notes_;
};

std::string num(double x) { return fmt_num(x); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool guarded(Checker& c, const std::string& what, const std::function<void()>& f) {
  try {
    f();
    return true;
  } catch (const std::exception& e) {
    c.expect(false, what + " threw: " + e.what());
    return false;
  }
}

void constants_tables(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0, worst_dd = 0.0;
  for (auto prec : {specfun::Precision::Double, specfun::Precision::DoubleDouble}) {
    ConstOptions opt;
    opt.precision = prec;
    for (int d = 2; d <= 12; ++d) {
      const std::size_t i = static_cast<std::size_t>(d - 2);
      guarded(c, "d=" + std::to_string(d), [&] {
        const double got[3] = {v_const(d, opt).value.value, vtilde_const(d, opt).value.value, k_const(d, opt).value.value};
        const char* want[3] = {kV[i], kVTilde[i], kK[i]};
        const char* names[3] = {"v", "vtilde", "K"};
        for (int k = 0; k < 3; ++k) {
          const double r = rel(got[k], std::strtod(want[k], nullptr));
          if (prec == specfun::Precision::Double) {
            worst = std::max(worst, r);
            c.expect(r <= 1e-6, std::string(names[k]) + "_" + std::to_string(d) + " rel " + num(r));
          } else {
            worst_dd = std::max(worst_dd, r);
          }
        }
      });
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 120.0, "runtime " + num(secs) + " s");
  c.note("max rel err " + num(worst) + " (double), " + num(worst_dd) + " (double-double; 1e-9 stretch " +
         (worst_dd <= 1e-9 ? "met" : "not met") + ")");
}

void closed_forms(Checker& c) {
  const double sp = std::sqrt(pi), l2 = std::log(2.0), r2 = std::sqrt(2.0);
  struct Row {
    const char* name;
    double got, want;
  };
  std::vector<Row> rows;
  guarded(c, "closed forms", [&] {
    ConstantReport v = v_const(2);
    rows = {
        {"v_2", v.value.value, 2.0 / 3.0 * sp * (2.0 * pi * pi - 9.0 - 12.0 * l2)},
        {"vtilde_2", vtilde_const(2).value.value, sp * (2.0 * l2 - 1.0)},
        {"K_2", k_const(2).value.value, sp * l2 / 4.0},
        {"I_2,0", v.component("I0").value, sp * (r2 - 1.0 + l2 - std::log(r2 + 1.0))},
        {"I_2,2", v.component("Idd").value, sp * (2.0 - r2 - 2.0 * l2 + std::log(r2 + 1.0))},
    };
  });
  for (const Row& r : rows) c.expect(std::abs(r.got - r.want) <= 1e-10, std::string(r.name) + " off by " + num(r.got - r.want));
}

void oracles(Checker& c) {
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    guarded(c, "oracles d=" + std::to_string(d), [&] {
      ConstantReport v = v_const(d);
      ConstantReport vt = vtilde_const(d);
      const std::pair<std::string, std::pair<double, OracleName>> pairs[] = {
          {"I0", {v.component("I0").value, OracleName::I0}},
          {"Idd", {v.component("Idd").value, OracleName::Idd}},
          {"J0", {vt.component("J0").value, OracleName::J0}},
      };
      for (const auto& [name, p] : pairs) {
        const double o = oracle_integral(p.second, d).value;
        worst = std::max(worst, std::abs(p.first - o));
        c.expect(std::abs(p.first - o) <= 1e-5, name + "_" + std::to_string(d) + " off by " + num(p.first - o));
      }
      if (d <= 4) {
        const double o = oracle_integral(OracleName::K, d).value;
        const double s = k_const(d).value.value;
        worst = std::max(worst, std::abs(s - o));
        c.expect(std::abs(s - o) <= 1e-5, "K_" + std::to_string(d) + " off by " + num(s - o));
      }
    });
  }
  c.note("max |series - quadrature| " + num(worst));
}

void exact_laws(Checker& c) {
  for (ModelKind kind : {ModelKind::Simplex, ModelKind::Hypercube}) {
    for (int d = 1; d <= 4; ++d) {
      const Model m(kind, d);
      const std::string tag = to_string(kind) + " d=" + std::to_string(d);
      guarded(c, tag, [&] {
        for (long n = 1; n <= 30; ++n) {
          std::vector<Rational> ex = chain_kernel_exact(m, n);
          Rational s = 0;
          for (const Rational& p : ex) s += p;
          c.expect(s == 1, tag + " n=" + std::to_string(n) + " exact kernel sum");
          KernelDist a = chain_kernel(m, n, KernelMethod::ClosedForm);
          KernelDist b = chain_kernel(m, n, KernelMethod::Quadrature);
          double sum = 0.0, diff = 0.0;
          for (std::size_t k = 0; k < a.probs.size(); ++k) {
            sum += a.probs[k];
            diff = std::max(diff, std::abs(a.probs[k] - b.probs[k]));
          }
          c.expect(std::abs(sum - 1.0) <= 1e-10, tag + " n=" + std::to_string(n) + " kernel sum " + num(sum));
          c.expect(diff <= 1e-10, tag + " n=" + std::to_string(n) + " kernel forms differ by " + num(diff));
        }
      });
    }
  }
  for (int d = 1; d <= 4; ++d) {
    guarded(c, "altsum d=" + std::to_string(d), [&] {
      MomentTable t = chain_moments_rational(Model(ModelKind::Simplex, d), 30);
      for (const MomentRow& r : t.rows)
        c.expect(r.mean_exact && *r.mean_exact == chain_mean_altsum(d, r.n),
                 "recurrence vs alternating sum d=" + std::to_string(d) + " n=" + std::to_string(r.n));
    });
  }
  guarded(c, "d=2 identities", [&] {
    MomentTable s = chain_moments_rational(Model(ModelKind::Simplex, 2), 30);
    MomentTable h = chain_moments_rational(Model(ModelKind::Hypercube, 2), 30);
    for (long n = 1; n <= 30; ++n) {
      const Rational h1 = specfun::harmonic_exact(static_cast<unsigned long>(n), 1);
      const Rational h2 = specfun::harmonic_exact(static_cast<unsigned long>(n), 2);
      const MomentRow& rs = s.rows[static_cast<std::size_t>(n - 1)];
      const MomentRow& rh = h.rows[static_cast<std::size_t>(n - 1)];
      const std::string tn = " n=" + std::to_string(n);
      c.expect(*rs.mean_exact == (h1 + 2) / 3, "simplex mean (H_n+2)/3" + tn);
      c.expect(*rh.mean_exact == (h1 + 1) / 2, "cube mean (H_n+1)/2" + tn);
      c.expect(*rh.var_exact == (h1 + h2 - 2) / 4, "cube variance (H_n+H_n^(2)-2)/4" + tn);
      const double cv = closed_form_d2(ClosedFormD2::SimplexChainVariance, n);
      c.expect(std::abs(cv - rs.var) <= 1e-10, "simplex variance identity" + tn + " off by " + num(cv - rs.var));
      c.expect(std::abs(closed_form_d2(ClosedFormD2::SimplexChainMean, n) - rs.mean) <= 1e-10, "simplex mean closed form" + tn);
      c.expect(std::abs(closed_form_d2(ClosedFormD2::CubeChainMean, n) - rh.mean) <= 1e-10, "cube mean closed form" + tn);
      c.expect(std::abs(closed_form_d2(ClosedFormD2::CubeChainVariance, n) - rh.var) <= 1e-10, "cube variance closed form" + tn);
    }
    c.expect(std::abs(closed_form_d2(ClosedFormD2::SimplexChainVariance, 1)) <= 1e-10, "simplex variance identity at n=1");
  });
  double worst = 0.0;
  for (int d = 2; d <= 6; ++d) {
    guarded(c, "phi d=" + std::to_string(d), [&] {
      for (long n : {1L, 2L, 5L, 10L, 50L, 100L, 500L, 1000L}) {
        PhiForms f = phi_product(d, n);
        const double r = std::abs(f.difference) / std::abs(f.gamma_form);
        worst = std::max(worst, r);
        c.expect(r <= 1e-10, "phi product d=" + std::to_string(d) + " n=" + std::to_string(n) + " rel " + num(r));
      }
    });
  }
  c.note("phi product vs Gamma form max rel " + num(worst));
}

void zeros(Checker& c) {
  double worst = 0.0;
  for (int d = 2; d <= 50; ++d) {
    guarded(c, "zeros d=" + std::to_string(d), [&] {
      Spectrum s = char_zeros(d, 1.0);
      worst = std::max(worst, s.max_residual);
      c.expect(s.max_residual <= 1e-10, "residual d=" + std::to_string(d) + " " + num(s.max_residual));
      c.expect(static_cast<int>(s.lambdas.size()) == d - 1, "zero count d=" + std::to_string(d));
      std::complex<double> sum = 0.0;
      for (const auto& z : s.lambdas) sum += z;
      const double target = -0.5 * d * (d + 1.0);
      c.expect(std::abs(sum - target) <= 1e-9 * std::abs(target), "Vieta sum d=" + std::to_string(d));
      if (d % 2 == 0) {
        double best = 1e300;
        for (const auto& z : s.lambdas) best = std::min(best, std::abs(z + (d + 1.0)));
        c.expect(best <= 1e-12, "real zero -(d+1) d=" + std::to_string(d) + " off by " + num(best));
      }
    });
  }
  for (int d = 2; d <= 12; ++d) {
    guarded(c, "branch d=" + std::to_string(d), [&] {
      auto f = [&](double eta) { return dominant_branch(d, std::exp(eta)); };
      auto coeffs = [&](double h) {
        const double p1 = f(h), m1 = f(-h), p2 = f(2 * h), m2 = f(-2 * h);
        return std::array<double, 3>{(p1 - m1) / (2 * h), (p1 + m1) / (2 * h * h),
                                     (p2 - 2 * p1 + 2 * m1 - m2) / (12 * h * h * h)};
      };
      const double h = 0.02;
      auto a = coeffs(h), b = coeffs(h / 2);
      auto want = branch_series_coeffs(d);
      for (int k = 0; k < 3; ++k) {
        const double fd = (4.0 * b[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k)]) / 3.0;
        const double w = want[static_cast<std::size_t>(k)];
        c.expect(std::abs(fd - w) <= 1e-6 * std::max(1.0, std::abs(w)),
                 "series coefficient " + std::to_string(k + 1) + " d=" + std::to_string(d) + " off by " + num(fd - w));
      }
    });
  }
  c.note("max residual " + num(worst));
}

void clt_params(Checker& c) {
  guarded(c, "chain parameters", [&] {
    ChainParams s = chain_params_simplex(2);
    c.expect(std::abs(s.c1 - 2.0 / 3.0) <= 1e-8, "c1(2) = " + num(s.c1));
    c.expect(std::abs(s.c2 - (5.0 * pi * pi / 54.0 - 26.0 / 27.0)) <= 1e-8, "c2(2) = " + num(s.c2));
    ChainParams h = chain_params_hypercube(2);
    c.expect(std::abs(h.c1 - (1.0 + egamma) / 2.0) <= 1e-10, "cube mean constant " + num(h.c1));
    c.expect(std::abs(h.c2 - (egamma + pi * pi / 6.0 - 2.0) / 4.0) <= 1e-10, "cube variance constant " + num(h.c2));
    double worst = 0.0;
    for (int d = 2; d <= 12; ++d) {
      for (const ChainParams& p : {chain_params_simplex(d), chain_params_hypercube(d)}) {
        worst = std::max({worst, p.c1_imag, p.c2_imag});
        c.expect(p.c1_imag <= 1e-12 && p.c2_imag <= 1e-12, "imaginary residue d=" + std::to_string(d));
      }
    }
    c.note("c1(2)=" + num(s.c1) + ", c2(2)=" + num(s.c2) + ", max imaginary residue " + num(worst));
  });
}

void monte_carlo(Checker& c, const ValidateOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  guarded(c, "d=1 sanity", [&] {
    ExperimentConfig cfg;
    cfg.model = Model(ModelKind::Simplex, 1);
    cfg.ns = {100};
    cfg.reps = 5000;
    cfg.statistics = {Statistic::Pareto, Statistic::Chain, Statistic::Dominating};
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    ExperimentReport r = run_experiment(cfg);
    const double h = specfun::harmonic_value(100, 1);
    for (const StatRow& row : r.rows) {
      const double z = (row.mean - h) / row.se_mean;
      worst = std::max(worst, std::abs(z));
      c.expect(std::abs(z) <= 4.0, "d=1 " + to_string(row.statistic) + " z=" + num(z));
    }
  });
  for (ModelKind kind : {ModelKind::Simplex, ModelKind::Hypercube}) {
    for (int d : {2, 3}) {
      const std::string tag = to_string(kind) + " d=" + std::to_string(d);
      guarded(c, tag, [&] {
        ExperimentConfig cfg;
        cfg.model = Model(kind, d);
        cfg.ns = {1000, 10000};
        cfg.reps = 10000;
        cfg.statistics = {Statistic::Chain, Statistic::Dominating};
        cfg.seed = opt.seed;
        cfg.threads = opt.threads;
        ExperimentReport r = run_experiment(cfg);
        for (const StatRow& row : r.rows) {
          const std::string rt = tag + " " + to_string(row.statistic) + " n=" + std::to_string(row.n);
          c.expect(row.exact_mean && row.exact_var, rt + " has no exact reference");
          if (!row.exact_mean || !row.exact_var) continue;
          const double zm = (row.mean - *row.exact_mean) / row.se_mean;
          const double zv = (row.var - *row.exact_var) / row.se_var;
          worst = std::max({worst, std::abs(zm), std::abs(zv)});
          c.expect(std::abs(zm) <= 4.0, rt + " mean z=" + num(zm));
          c.expect(std::abs(zv) <= 4.0, rt + " variance z=" + num(zv));
        }
      });
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < 300.0, "runtime " + num(secs) + " s");
  c.note("max |z| " + num(worst));
}

ExperimentReport simplex_d2_run(const ValidateOptions& opt, std::vector<long> ns, std::vector<Statistic> stats) {
  ExperimentConfig cfg;
  cfg.model = Model(ModelKind::Simplex, 2);
  cfg.ns = std::move(ns);
  cfg.reps = 2000;
  cfg.statistics = std::move(stats);
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  return run_experiment(cfg);
}

const StatRow& find_row(const ExperimentReport& r, Statistic s, long n) {
  for (const StatRow& row : r.rows)
    if (row.statistic == s && row.n == n) return row;
  throw DomainError("missing report row");
}

void pareto_asymptotics(Checker& c, const ValidateOptions& opt) {
  guarded(c, "pareto run", [&] {
    ExperimentReport r = simplex_d2_run(opt, {10000}, {Statistic::Pareto, Statistic::Maxima});
    const StatRow& p = find_row(r, Statistic::Pareto, 10000);
    const StatRow& m = find_row(r, Statistic::Maxima, 10000);
    const double pm = pareto_mean_asym(2, 1e4).value;
    const double mm = std::sqrt(pi) * 100.0 - 1.0;
    const double v2 = v_const(2).value.value;
    const double ratio = p.var / 100.0 / v2;
    c.expect(std::abs(p.mean - pm) <= 2.0, "Pareto mean " + num(p.mean) + " vs " + num(pm));
    c.expect(std::abs(ratio - 1.0) <= 0.1, "Pareto variance/sqrt(n) over v_2 = " + num(ratio));
    c.expect(std::abs(m.mean - mm) <= 2.0, "maxima mean " + num(m.mean) + " vs " + num(mm));
    c.note("Pareto mean " + num(p.mean) + " (asymptotic " + num(pm) + "), var/sqrt(n)/v_2 " + num(ratio) +
           ", maxima mean " + num(m.mean) + " (asymptotic " + num(mm) + ")");
  });
}

void normality(Checker& c, const ValidateOptions& opt) {
  guarded(c, "normality run", [&] {
    ExperimentReport r = simplex_d2_run(opt, {100, 1000, 10000}, {Statistic::Pareto, Statistic::Chain});
    const StatRow& p = find_row(r, Statistic::Pareto, 10000);
    c.expect(p.ks && *p.ks <= 0.05, "Pareto KS " + num(p.ks.value_or(-1)));
    std::vector<double> ks;
    for (long n : {100L, 1000L, 10000L}) ks.push_back(find_row(r, Statistic::Chain, n).ks.value_or(1.0));
    c.expect(ks[0] > ks[1] && ks[1] > ks[2], "chain KS not decreasing: " + num(ks[0]) + ", " + num(ks[1]) + ", " + num(ks[2]));
    c.expect(ks[2] <= 0.2, "chain KS at n=1e4 " + num(ks[2]));
    c.note("Pareto KS " + num(p.ks.value_or(-1)) + "; chain KS " + num(ks[0]) + ", " + num(ks[1]) + ", " + num(ks[2]));
  });
}

void dominating_limits(Checker& c) {
  guarded(c, "dominating limits", [&] {
    DomLimits two = dom_limits(2);
    c.expect(std::abs(two.simplex_mean - 1.23372) <= 0.01, "d=2 mean limit " + num(two.simplex_mean));
    c.expect(std::abs(two.simplex_var - 0.2189) <= 0.01, "d=2 variance limit " + num(two.simplex_var));
    for (int d = 2; d <= 7; ++d) {
      DomLimits l = dom_limits(d);
      const std::size_t i = static_cast<std::size_t>(d - 2);
      c.expect(std::abs(l.simplex_mean - kFigMean[i] / kFigUnit) <= 0.01, "plotted mean d=" + std::to_string(d));
      c.expect(std::abs(l.simplex_var - kFigVar[i] / kFigUnit) <= 0.01, "plotted variance d=" + std::to_string(d));
    }
    double prev = two.simplex_mean - 1.0, lo = 1e300, hi = 0.0;
    for (int d = 3; d <= 12; ++d) {
      DomLimits l = dom_limits(d);
      const double excess = l.simplex_mean - 1.0;
      c.expect(excess < prev, "E[Z]-1 not decreasing at d=" + std::to_string(d));
      prev = excess;
      if (d >= 5) {
        const double ratio = excess / l.scale;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        c.expect(ratio > 0.5 && ratio < 2.0, "(E[Z]-1)/(sqrt(pi d) 4^-d) = " + num(ratio) + " at d=" + std::to_string(d));
      }
    }
    c.note("limits " + num(two.simplex_mean) + ", " + num(two.simplex_var) + "; scale ratio in [" + num(lo) + ", " +
           num(hi) + "] for d=5..12");
  });
}

const char* kTitles[] = {"",
                         "constants tables",
                         "closed forms",
                         "series vs quadrature oracles",
                         "exact-law identities",
                         "characteristic zeros",
                         "CLT parameters",
                         "Monte Carlo vs exact moments",
                         "Pareto and maxima asymptotics",
                         "normality",
                         "dominating-record limits"};

}  // namespace

CriterionResult check_criterion(int id, const ValidateOptions& opt) {
  if (id < 1 || id > kCriterionCount) throw DomainError("unknown criterion " + std::to_string(id));
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  switch (id) {
    case 1: constants_tables(c); break;
    case 2: closed_forms(c); break;
    case 3: oracles(c); break;
    case 4: exact_laws(c); break;
    case 5: zeros(c); break;
    case 6: clt_params(c); break;
    case 7: monte_carlo(c, opt); break;
    case 8: pareto_asymptotics(c, opt); break;
    case 9: normality(c, opt); break;
    case 10: dominating_limits(c); break;
  }
  CriterionResult r;
  r.id = id;
  r.title = kTitles[id];
  r.pass = c.ok();
  r.detail = c.detail();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_validation(const ValidateOptions& opt, std::span<const int> ids, std::ostream& out) {
  std::vector<int> list(ids.begin(), ids.end());
  if (list.empty())
    for (int i = 1; i <= kCriterionCount; ++i) list.push_back(i);
  std::vector<CriterionResult> results;
  for (int id : list) {
    results.push_back(check_criterion(id, opt));
    out << format_line(results.back()) << '\n' << std::flush;
  }
  return results;
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "criterion %2d %s  ", r.id, r.pass ? "PASS" : "FAIL");
  return std::string(head) + r.title + ": " + r.detail;
}

}  // namespace recordlab::cli
