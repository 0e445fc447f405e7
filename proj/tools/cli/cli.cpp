#include "cli.hpp"

#include "validate.hpp"

#include "recordlab/asymptotics.hpp"
#include "recordlab/charpoly.hpp"
#include "recordlab/error.hpp"
#include "recordlab/exactlaws.hpp"
#include "recordlab/format.hpp"
#include "recordlab/montecarlo.hpp"
#include "recordlab/varconstants.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace recordlab::cli {

namespace {

using nlohmann::ordered_json;

struct Common {
  std::string model = "simplex";
  int d = 2;
  std::vector<long> ns;
  long reps = 1000;
  std::string seed = "0x5EED";
  int threads = -1;
  std::string out;
  double eps = 1e-13;
  std::string precision = "double";
  std::string output_file;
};

struct Flags {
  Common c;
  std::vector<std::string> stats;
  std::string which = "v,vtilde,K";
  int dmin = -1, dmax = -1;
  std::string tail = "richardson";
  bool oracle = false;
  long nmax = 0;
  bool kernel = false;
  bool summary = false;
  double y = 1.0;
  int resolution = 200;
  std::string figure;
  std::string tallies;
  double max_points = 2e10;
  bool timing = false;
  std::vector<int> only;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used, 0);
    if (used != s.size()) throw UsageError("invalid seed '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("invalid seed '" + s + "'");
  }
}

int resolve_threads(int flag) {
  if (flag >= 0) return flag;
  if (const char* env = std::getenv("RECORDLAB_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 0) return v;
    } catch (const std::logic_error&) {
    }
    throw UsageError(std::string("invalid RECORDLAB_THREADS '") + env + "'");
  }
  return 0;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Statistic> parse_stats(const std::vector<std::string>& raw, std::vector<Statistic> fallback) {
  if (raw.empty()) return fallback;
  std::vector<Statistic> out;
  for (const std::string& r : raw)
    for (const std::string& s : split(r)) out.push_back(parse_statistic(s));
  return out;
}

ordered_json base_config(const std::string& command) {
  ordered_json j;
  j["program"] = "recordlab";
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

// "# key=value ..." line echoing a resolved configuration above CSV output.
std::string csv_header(const ordered_json& cfg) {
  std::string s = "#";
  for (const auto& [k, v] : cfg.items()) {
    s += ' ';
    s += k;
    s += '=';
    if (v.is_string())
      s += v.get<std::string>();
    else if (v.is_array()) {
      std::string list;
      for (const auto& e : v) list += (list.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      s += list;
    } else
      s += v.dump();
  }
  return s + "\n";
}

std::string emit(const std::string& fmt, const ordered_json& cfg, const ordered_json& body, const std::string& csv) {
  if (fmt == "json") {
    ordered_json j;
    j["config"] = cfg;
    for (const auto& [k, v] : body.items()) j[k] = v;
    return j.dump(2) + "\n";
  }
  return csv_header(cfg) + csv;
}

Model make_model(const Common& c) {
  return Model(parse_model_kind(c.model), c.d);
}

std::string cmd_simulate(const Flags& f) {
  ExperimentConfig cfg;
  cfg.model = make_model(f.c);
  cfg.ns = f.c.ns.empty() ? std::vector<long>{1000} : f.c.ns;
  cfg.reps = f.c.reps;
  cfg.statistics = parse_stats(f.stats, cfg.statistics);
  cfg.seed = parse_seed(f.c.seed);
  cfg.threads = resolve_threads(f.c.threads);
  cfg.max_points = f.max_points;
  cfg.keep_tallies = !f.tallies.empty();
  ExperimentReport r = run_experiment(cfg);
  if (!f.tallies.empty()) {
    std::ofstream t(f.tallies);
    if (!t) throw UsageError("cannot write " + f.tallies);
    t << tallies_csv(r);
  }
  ordered_json c = base_config("simulate");
  c["model"] = to_string(cfg.model.kind);
  c["d"] = cfg.model.d;
  c["n"] = r.sorted_ns;
  c["reps"] = cfg.reps;
  ordered_json st = ordered_json::array();
  for (Statistic s : cfg.statistics) st.push_back(to_string(s));
  c["stat"] = st;
  c["seed"] = cfg.seed;
  c["max_points"] = cfg.max_points;
  ordered_json body = ordered_json::parse(report_json(r, f.timing));
  body.erase("config");
  return emit(f.c.out.empty() ? "json" : f.c.out, c, body, report_csv(r));
}

std::string cmd_exact(const Flags& f) {
  const Model m = make_model(f.c);
  std::vector<long> ns = f.c.ns;
  if (f.nmax > 0)
    for (long n = 1; n <= f.nmax; ++n) ns.push_back(n);
  if (ns.empty()) ns = {10};
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (long n : ns)
    if (n < 1) throw UsageError("--n must be at least 1");
  const long top = ns.back();
  const std::vector<Statistic> stats = parse_stats(f.stats, {Statistic::Chain});
  if (stats.size() != 1) throw UsageError("exact takes a single --stat");
  const Statistic stat = stats.front();

  ordered_json c = base_config("exact");
  c["model"] = to_string(m.kind);
  c["d"] = m.d;
  c["stat"] = to_string(stat);
  c["n"] = ns;
  c["seed"] = parse_seed(f.c.seed);
  const std::string fmt = f.c.out.empty() ? "json" : f.c.out;

  if (f.kernel) {
    if (stat != Statistic::Chain) throw UsageError("--kernel applies to chain records");
    if (ns.size() != 1) throw UsageError("--kernel takes exactly one --n");
    c["kernel"] = true;
    KernelDist k = chain_kernel(m, top);
    std::vector<Rational> ex;
    if (top <= 128) ex = chain_kernel_exact(m, top);
    ordered_json rows = ordered_json::array();
    std::ostringstream csv;
    csv << "k,prob,exact\n";
    for (std::size_t i = 0; i < k.probs.size(); ++i) {
      ordered_json r;
      r["k"] = i;
      r["prob"] = round15(k.probs[i]);
      if (!ex.empty()) r["exact"] = rational_string(ex[i]);
      rows.push_back(std::move(r));
      csv << i << ',' << fmt_num(k.probs[i]) << ',' << (ex.empty() ? "" : rational_string(ex[i])) << '\n';
    }
    ordered_json body;
    body["n"] = top;
    body["kernel"] = std::move(rows);
    return emit(fmt, c, body, csv.str());
  }

  MomentTable t;
  switch (stat) {
    case Statistic::Chain:
      if (top <= kExactRationalLimit)
        t = chain_moments_rational(m, top);
      else if (top <= kChainRecurrenceLimit)
        t = chain_moments_exact(m, top);
      else
        throw UsageError("exact chain moments are limited to n <= " + std::to_string(kChainRecurrenceLimit));
      break;
    case Statistic::Dominating: t = dom_moment_table(m, top); break;
    default: throw UsageError("exact moments are available for --stat chain and --stat dominating");
  }
  MomentTable sel{t.model, t.statistic, {}};
  for (long n : ns) sel.rows.push_back(t.rows[static_cast<std::size_t>(n - 1)]);
  ordered_json body = ordered_json::parse(moment_table_json(sel));
  body.erase("model");
  body.erase("d");
  body.erase("statistic");
  return emit(fmt, c, body, moment_table_csv(sel));
}

std::string cmd_asymptotic(const Flags& f) {
  const Model m = make_model(f.c);
  ordered_json c = base_config("asymptotic");
  c["model"] = to_string(m.kind);
  c["d"] = m.d;
  const std::string fmt = f.c.out.empty() ? "json" : f.c.out;
  if (f.summary) {
    c["summary"] = true;
    ordered_json body = ordered_json::parse(summary_table_json(m.d));
    std::ostringstream csv;
    csv << "record,model,mean_expression,mean_coefficient,variance_expression,variance_coefficient\n";
    for (const auto& r : body["rows"]) {
      auto coef = [](const ordered_json& v) { return v.is_null() ? std::string() : fmt_num(v.get<double>()); };
      csv << r["record"].get<std::string>() << ',' << r["model"].get<std::string>() << ",\""
          << r["mean"]["expression"].get<std::string>() << "\"," << coef(r["mean"]["coefficient"]) << ",\""
          << r["variance"]["expression"].get<std::string>() << "\"," << coef(r["variance"]["coefficient"]) << '\n';
    }
    return emit(fmt, c, body, csv.str());
  }
  std::vector<long> ns = f.c.ns.empty() ? std::vector<long>{10000} : f.c.ns;
  const std::vector<Statistic> stats =
      parse_stats(f.stats, {Statistic::Pareto, Statistic::Chain, Statistic::Dominating, Statistic::Maxima});
  c["n"] = ns;
  ordered_json st = ordered_json::array();
  for (Statistic s : stats) st.push_back(to_string(s));
  c["stat"] = st;

  auto opt_num = [](std::optional<double> v) { return v ? ordered_json(round15(*v)) : ordered_json(nullptr); };
  auto attempt = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  const int d = m.d;
  const bool simplex = m.kind == ModelKind::Simplex;
  ordered_json rows = ordered_json::array();
  std::ostringstream csv;
  csv << "statistic,n,mean,var,mean_error\n";
  for (Statistic s : stats) {
    for (long n : ns) {
      if (n < 2) throw UsageError("asymptotic forms need n >= 2");
      const double x = static_cast<double>(n);
      std::optional<double> mean;
      std::string err;
      switch (s) {
        case Statistic::Pareto:
          if (simplex || d == 1) {
            AsymptoticMoment a = pareto_mean_asym(d, x);
            mean = a.value;
            err = to_string(a.error);
          } else {
            mean = std::pow(std::log(x), d) / std::tgamma(d + 1.0);
            err = to_string(ErrorClass::LittleO);
          }
          break;
        case Statistic::Maxima:
          if (simplex || d == 1) {
            AsymptoticMoment a = maxima_mean_asym(d, x);
            mean = a.value;
            err = to_string(a.error);
          } else {
            mean = std::pow(std::log(x), d - 1) / std::tgamma(static_cast<double>(d));
            err = to_string(ErrorClass::LittleO);
          }
          break;
        case Statistic::Chain: {
          AsymptoticMoment a = chain_mean_asym(m, x);
          mean = a.value;
          err = to_string(a.error);
          break;
        }
        case Statistic::Dominating:
          mean = dom_moments(m, n).mean;
          err = to_string(simplex ? ErrorClass::Exponential : ErrorClass::Exact);
          break;
      }
      std::optional<double> var = attempt([&] { return record_variance_asym(s, m, x); });
      ordered_json r;
      r["statistic"] = to_string(s);
      r["n"] = n;
      r["mean"] = opt_num(mean);
      r["var"] = opt_num(var);
      r["mean_error"] = err;
      rows.push_back(std::move(r));
      csv << to_string(s) << ',' << n << ',' << (mean ? fmt_num(*mean) : "") << ',' << (var ? fmt_num(*var) : "")
          << ',' << err << '\n';
    }
  }
  ordered_json body;
  body["rows"] = std::move(rows);
  if (d >= 2) {
    ChainParams p = simplex ? chain_params_simplex(d) : chain_params_hypercube(d);
    ordered_json cp;
    cp["mu"] = round15(p.mu);
    cp["sigma2"] = round15(p.sigma2);
    cp["c1"] = round15(p.c1);
    cp["c2"] = round15(p.c2);
    cp["log_variable"] = simplex ? "H_n" : "log n";
    body["chain_params"] = std::move(cp);
  }
  return emit(fmt, c, body, csv.str());
}

std::string cmd_constants(const Flags& f) {
  std::vector<ConstantName> which;
  for (const std::string& s : split(f.which)) which.push_back(parse_constant_name(s));
  if (which.empty()) throw UsageError("--which needs at least one constant");
  int dmin = 2, dmax = 12;
  if (f.dmin >= 0) dmin = f.dmin;
  if (f.dmax >= 0) dmax = f.dmax;
  if (f.c.d > 0 && f.dmin < 0 && f.dmax < 0 && f.c.d != -1) dmin = dmax = f.c.d;
  if (dmin < 2 || dmax < dmin) throw UsageError("constants need 2 <= dmin <= dmax");
  ConstOptions opt;
  opt.eps = f.c.eps;
  opt.precision = f.c.precision == "dd" ? specfun::Precision::DoubleDouble : specfun::Precision::Double;
  opt.tail = f.tail == "hurwitz" ? specfun::Acceleration::HurwitzTail : specfun::Acceleration::Richardson;
  opt.with_oracle = f.oracle;

  ordered_json c = base_config("constants");
  ordered_json w = ordered_json::array();
  for (ConstantName n : which) w.push_back(to_string(n));
  c["which"] = w;
  c["dmin"] = dmin;
  c["dmax"] = dmax;
  c["eps"] = opt.eps;
  c["precision"] = f.c.precision;
  c["tail"] = f.tail;
  c["seed"] = parse_seed(f.c.seed);

  std::vector<ConstantsRow> rows;
  ordered_json list = ordered_json::array();
  for (int d = dmin; d <= dmax; ++d) {
    ConstantsRow row{d, {}};
    ordered_json jr;
    jr["d"] = d;
    for (ConstantName n : which) {
      ConstantReport rep = constant(n, d, opt);
      ordered_json jc;
      jc["value"] = round15(rep.value.value);
      jc["err"] = round15(rep.value.err);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10f", rep.value.value);
      jc["value_10"] = buf;
      jc["terms"] = rep.value.terms_used;
      ordered_json comp;
      for (const NamedValue& nv : rep.components) comp[nv.name] = {{"value", round15(nv.value.value)}, {"err", round15(nv.value.err)}};
      jc["components"] = std::move(comp);
      if (rep.oracle) jc["oracle"] = {{"value", round15(rep.oracle->value)}, {"err", round15(rep.oracle->err)}};
      jr[to_string(n)] = std::move(jc);
      row.reports.push_back(std::move(rep));
    }
    list.push_back(std::move(jr));
    rows.push_back(std::move(row));
  }
  ordered_json body;
  body["constants"] = std::move(list);
  return emit(f.c.out.empty() ? "csv" : f.c.out, c, body, constants_csv(rows, which));
}

std::string cmd_zeros(const Flags& f) {
  int dmin = f.dmin >= 0 ? f.dmin : 2;
  int dmax = f.dmax >= 0 ? f.dmax : 50;
  if (f.c.d > 0 && f.dmin < 0 && f.dmax < 0) dmin = dmax = f.c.d;
  if (dmin < 2 || dmax < dmin) throw UsageError("zeros need 2 <= dmin <= dmax");
  if (f.resolution < 4) throw UsageError("--resolution must be at least 4");
  ordered_json c = base_config("zeros");
  c["dmin"] = dmin;
  c["dmax"] = dmax;
  c["y"] = f.y;
  c["resolution"] = f.resolution;
  const std::string csv = zeros_csv(dmin, dmax, f.y, f.resolution);
  ordered_json body;
  ordered_json zs = ordered_json::array(), curve = ordered_json::array();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    int d;
    double re, im;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &d, &re, &im) != 3) continue;
    if (d == 0)
      curve.push_back({round15(re), round15(im)});
    else
      zs.push_back({{"d", d}, {"re", round15(re)}, {"im", round15(im)}});
  }
  body["zeros"] = std::move(zs);
  body["limit_curve"] = std::move(curve);
  return emit(f.c.out.empty() ? "csv" : f.c.out, c, body, csv);
}

std::string cmd_figure(const Flags& f) {
  if (f.figure != "dom-rec") throw UsageError("unknown figure '" + f.figure + "' (available: dom-rec)");
  const int dmin = f.dmin >= 0 ? f.dmin : 2;
  const int dmax = f.dmax >= 0 ? f.dmax : 7;
  if (dmin < 2 || dmax < dmin) throw UsageError("figure needs 2 <= dmin <= dmax");
  const long n = f.c.ns.empty() ? 100 : f.c.ns.front();
  if (n < 1) throw UsageError("--n must be at least 1");
  ordered_json c = base_config("figure");
  c["figure"] = f.figure;
  c["dmin"] = dmin;
  c["dmax"] = dmax;
  c["n"] = n;
  std::ostringstream csv;
  csv << "d,simplex_mean,simplex_var,cube_mean,cube_var,simplex_mean_limit,simplex_var_limit,cube_mean_limit,"
         "cube_var_limit,scale\n";
  ordered_json rows = ordered_json::array();
  for (int d = dmin; d <= dmax; ++d) {
    DomMoments s = dom_moments(Model(ModelKind::Simplex, d), n);
    DomMoments h = dom_moments(Model(ModelKind::Hypercube, d), n);
    DomLimits l = dom_limits(d);
    const double vals[] = {s.mean, s.var, h.mean, h.var, l.simplex_mean, l.simplex_var, l.cube_mean, l.cube_var, l.scale};
    csv << d;
    for (double v : vals) csv << ',' << fmt_num(v);
    csv << '\n';
    ordered_json r;
    r["d"] = d;
    const char* names[] = {"simplex_mean", "simplex_var", "cube_mean", "cube_var", "simplex_mean_limit",
                           "simplex_var_limit", "cube_mean_limit", "cube_var_limit", "scale"};
    for (int i = 0; i < 9; ++i) r[names[i]] = round15(vals[i]);
    rows.push_back(std::move(r));
  }
  ordered_json body;
  body["rows"] = std::move(rows);
  return emit(f.c.out.empty() ? "csv" : f.c.out, c, body, csv.str());
}

int cmd_validate(const Flags& f, std::ostream& out) {
  ValidateOptions opt;
  opt.seed = parse_seed(f.c.seed);
  opt.threads = resolve_threads(f.c.threads);
  for (int id : f.only)
    if (id < 1 || id > kCriterionCount) throw UsageError("--only takes criterion numbers 1.." + std::to_string(kCriterionCount));
  out << "# recordlab " << kVersion << " validate seed=" << opt.seed << '\n';
  std::vector<CriterionResult> rs = run_validation(opt, f.only, out);
  long failed = 0;
  for (const CriterionResult& r : rs) failed += r.pass ? 0 : 1;
  out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

void add_common(CLI::App* sub, Common& c, bool model, bool sampling) {
  if (model) {
    sub->add_option("--model", c.model, "Sampling region: cube or simplex")
        ->check(CLI::IsMember({"cube", "hypercube", "simplex"}))
        ->capture_default_str();
    sub->add_option("--d", c.d, "Dimension")->check(CLI::Range(1, 1000))->capture_default_str();
    sub->add_option("--n", c.ns, "Sample size (repeatable)")->take_all();
  }
  if (sampling) {
    sub->add_option("--reps", c.reps, "Replications")->check(CLI::Range(2L, 1000000000L))->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores; default from RECORDLAB_THREADS)")
        ->check(CLI::Range(0, 4096));
  }
  sub->add_option("--seed", c.seed, "Master seed (decimal or 0x hex)")->capture_default_str();
  sub->add_option("--out", c.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("-o,--output", c.output_file, "Write to a file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"recordlab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"recordlab: Pareto, chain and dominating records in the hypercube and the simplex"};
  app.set_version_flag("--version", std::string("recordlab ") + kVersion);
  app.require_subcommand(1);
  Flags f;

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates of record-count moments");
  sim->alias("run");
  add_common(sim, f.c, true, true);
  sim->add_option("--stat", f.stats, "Statistics: pareto, chain, dominating, maxima (repeatable or comma list)")->take_all();
  sim->add_option("--tallies", f.tallies, "Write per-replication tallies as CSV to this file");
  sim->add_option("--max-points", f.max_points, "Cap on reps x max(n); excess replications are dropped")->capture_default_str();
  sim->add_flag("--timing", f.timing, "Include wall-clock time in JSON output");

  auto* ex = app.add_subcommand("exact", "Exact moment tables from the recurrences");
  add_common(ex, f.c, true, false);
  ex->add_option("--stat", f.stats, "chain or dominating");
  ex->add_option("--nmax", f.nmax, "Emit every n from 1 to nmax")->check(CLI::Range(1L, 1000000L));
  ex->add_flag("--kernel", f.kernel, "Emit the chain-record kernel pi_{n,k} instead");

  auto* as = app.add_subcommand("asymptotic", "Asymptotic means and variances");
  add_common(as, f.c, true, false);
  as->add_option("--stat", f.stats, "Statistics (repeatable or comma list)")->take_all();
  as->add_flag("--summary", f.summary, "Emit the leading-order summary table for dimension d");

  auto* co = app.add_subcommand("constants", "Variance constants v_d, vtilde_d and K_d");
  co->add_option("--which", f.which, "Comma list of v, vtilde, K")->capture_default_str();
  co->add_option("--d", f.c.d, "Single dimension");
  co->add_option("--dmin", f.dmin, "Smallest dimension (default 2)");
  co->add_option("--dmax", f.dmax, "Largest dimension (default 12)");
  co->add_option("--eps", f.c.eps, "Target accuracy of each series")->check(CLI::Range(1e-15, 1e-2))->capture_default_str();
  co->add_option("--precision", f.c.precision, "Accumulation precision")
      ->check(CLI::IsMember({"double", "dd"}))
      ->capture_default_str();
  co->add_option("--tail", f.tail, "Tail treatment of power-law series")
      ->check(CLI::IsMember({"richardson", "hurwitz"}))
      ->capture_default_str();
  co->add_flag("--oracle", f.oracle, "Attach the quadrature cross-check where available (JSON)");
  co->add_option("--seed", f.c.seed, "Seed echoed in the header (unused)")->capture_default_str();
  co->add_option("--out", f.c.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  co->add_option("-o,--output", f.c.output_file, "Write to a file instead of stdout");

  auto* ze = app.add_subcommand("zeros", "Zeros of (z+1)...(z+d) - d! y and the limit curve");
  ze->add_option("--d", f.c.d, "Single dimension");
  ze->add_option("--dmin", f.dmin, "Smallest dimension (default 2)");
  ze->add_option("--dmax", f.dmax, "Largest dimension (default 50)");
  ze->add_option("--y", f.y, "Right-hand side parameter")->capture_default_str();
  ze->add_option("--resolution", f.resolution, "Limit-curve points per half")->capture_default_str();
  ze->add_option("--out", f.c.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  ze->add_option("-o,--output", f.c.output_file, "Write to a file instead of stdout");

  auto* fi = app.add_subcommand("figure", "Plot data");
  fi->add_option("name", f.figure, "Figure name: dom-rec")->required();
  fi->add_option("--dmin", f.dmin, "Smallest dimension (default 2)");
  fi->add_option("--dmax", f.dmax, "Largest dimension (default 7)");
  fi->add_option("--n", f.c.ns, "Sample size for the finite-n columns (default 100)");
  fi->add_option("--out", f.c.out, "Output format")->check(CLI::IsMember({"json", "csv"}));
  fi->add_option("-o,--output", f.c.output_file, "Write to a file instead of stdout");

  auto* va = app.add_subcommand("validate", "Run the acceptance suite");
  va->add_option("--only", f.only, "Criterion numbers to run (default all)")->take_all();
  va->add_option("--seed", f.c.seed, "Master seed")->capture_default_str();
  va->add_option("--threads", f.c.threads, "Worker threads")->check(CLI::Range(0, 4096));

  // Constants and zeros treat --d as "unset" unless given.
  f.c.d = -1;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (f.c.d == -1 && !(*co || *ze)) f.c.d = 2;

  try {
    if (*va) return cmd_validate(f, out);
    std::string text;
    if (*sim) text = cmd_simulate(f);
    else if (*ex) text = cmd_exact(f);
    else if (*as) text = cmd_asymptotic(f);
    else if (*co) text = cmd_constants(f);
    else if (*ze) text = cmd_zeros(f);
    else if (*fi) text = cmd_figure(f);
    if (!f.c.output_file.empty()) {
      std::ofstream o(f.c.output_file);
      if (!o) throw UsageError("cannot write " + f.c.output_file);
      o << text;
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace recordlab::cli
