#include "recordlab/montecarlo.hpp"

#include "recordlab/asymptotics.hpp"
#include "recordlab/error.hpp"
#include "recordlab/format.hpp"
#include "recordlab/records.hpp"
#include "recordlab/varconstants.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

namespace recordlab {

namespace {

int resolve_threads(int requested, long work) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return static_cast<int>(std::min<long>(t, std::max<long>(work, 1)));
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Results must
// be written by index so that the outcome does not depend on scheduling.
void parallel_for(long count, int threads, const std::function<void(long)>& body) {
  threads = resolve_threads(threads, count);
  if (threads == 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (long i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double ks_sorted(std::vector<double>& x, double mean, double sd) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    // The empirical CDF jumps from i/n to j/n at a tie group.
    const double f = sd > 0.0 ? normal_cdf((x[i] - mean) / sd) : 0.5;
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(j) / n)});
    i = j;
  }
  return d;
}

struct Moments {
  double mean = 0.0, var = 0.0, se_mean = 0.0, se_var = 0.0;
};

Moments moments(std::span<const double> x) {
  Moments m;
  const double n = static_cast<double>(x.size());
  long double s = 0.0L;
  for (double v : x) s += v;
  m.mean = static_cast<double>(s / n);
  long double s2 = 0.0L, s4 = 0.0L;
  for (double v : x) {
    long double dv = v - m.mean;
    s2 += dv * dv;
    s4 += dv * dv * dv * dv;
  }
  m.var = static_cast<double>(s2 / (n - 1.0));
  const double m4 = static_cast<double>(s4 / n);
  m.se_mean = std::sqrt(m.var / n);
  m.se_var = std::sqrt(std::max(m4 - m.var * m.var * (n - 3.0) / (n - 1.0), 0.0) / n);
  return m;
}

struct Reference {
  std::optional<double> exact_mean, exact_var, asym_mean, asym_var;
};

template <class F>
std::optional<double> attempt(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

std::vector<Reference> references(const Model& model, Statistic stat, const std::vector<long>& ns) {
  std::vector<Reference> out(ns.size());
  const int d = model.d;
  const bool simplex = model.kind == ModelKind::Simplex;
  const long nmax = ns.back();
  auto hn = [](long n, unsigned a) { return specfun::harmonic_value(static_cast<unsigned long>(n), a); };
  switch (stat) {
    case Statistic::Chain: {
      if (nmax <= kChainRecurrenceLimit) {
        MomentTable t = chain_moments_exact(model, nmax);
        for (std::size_t i = 0; i < ns.size(); ++i) {
          const MomentRow& r = t.rows[static_cast<std::size_t>(ns[i] - 1)];
          out[i].exact_mean = r.mean;
          out[i].exact_var = r.var;
        }
      }
      for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 2) continue;
        out[i].asym_mean = chain_mean_asym(model, static_cast<double>(ns[i])).value;
        out[i].asym_var = chain_var_asym(model, static_cast<double>(ns[i])).value;
      }
      break;
    }
    case Statistic::Dominating:
      for (std::size_t i = 0; i < ns.size(); ++i) {
        DomMoments m = dom_moments(model, ns[i]);
        out[i].exact_mean = m.mean;
        out[i].exact_var = m.var;
      }
      break;
    case Statistic::Pareto:
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const long n = ns[i];
        if (d == 1) {
          out[i].exact_mean = hn(n, 1);
          out[i].exact_var = hn(n, 1) - hn(n, 2);
        } else if (!simplex) {
          out[i].exact_mean = cube_maxima_mean(d + 1, n);
        } else if (n >= 2) {
          out[i].asym_mean = pareto_mean_asym(d, static_cast<double>(n)).value;
          out[i].asym_var = attempt([&] { return record_variance_asym(stat, model, static_cast<double>(n)); });
        }
      }
      break;
    case Statistic::Maxima:
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const long n = ns[i];
        if (d == 1) {
          out[i].exact_mean = 1.0;
          out[i].exact_var = 0.0;
        } else if (!simplex) {
          out[i].exact_mean = cube_maxima_mean(d, n);
        } else if (n >= 2) {
          out[i].asym_mean = maxima_mean_asym(d, static_cast<double>(n)).value;
          out[i].asym_var = attempt([&] { return record_variance_asym(stat, model, static_cast<double>(n)); });
        }
      }
      break;
  }
  return out;
}

void check_config(const ExperimentConfig& cfg) {
  if (cfg.reps < 2) throw DomainError("replications must be at least 2");
  if (cfg.ns.empty()) throw DomainError("at least one n is required");
  for (long n : cfg.ns)
    if (n < 1) throw DomainError("n must be at least 1");
  if (cfg.statistics.empty()) throw DomainError("at least one statistic is required");
}

}  // namespace

double ks_normal(std::span<const double> samples) {
  if (samples.size() < 100) throw DomainError("ks_normal needs at least 100 samples");
  Moments m = moments(samples);
  std::vector<double> x(samples.begin(), samples.end());
  return ks_sorted(x, m.mean, m.var > 0.0 ? std::sqrt(m.var) : 0.0);
}

double ks_normal(std::span<const double> samples, double mean, double var) {
  if (samples.size() < 100) throw DomainError("ks_normal needs at least 100 samples");
  if (!(var > 0.0)) throw DomainError("ks_normal: reference variance must be positive");
  std::vector<double> x(samples.begin(), samples.end());
  return ks_sorted(x, mean, std::sqrt(var));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  check_config(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.config = cfg;
  std::vector<long> ns = cfg.ns;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  rep.sorted_ns = ns;
  std::vector<Statistic> stats = cfg.statistics;
  const long nmax = ns.back();
  const int d = cfg.model.d;

  long reps = cfg.reps;
  if (static_cast<double>(reps) * static_cast<double>(nmax) > cfg.max_points) {
    reps = static_cast<long>(cfg.max_points / static_cast<double>(nmax));
    rep.partial = true;
    if (reps < 2) throw DomainError("resource cap leaves fewer than 2 replications");
  }
  rep.reps_done = reps;

  bool want_dom = false, want_chain = false, want_front = false;
  for (Statistic s : stats) {
    want_dom |= s == Statistic::Dominating;
    want_chain |= s == Statistic::Chain;
    want_front |= s == Statistic::Pareto || s == Statistic::Maxima;
  }
  const std::size_t S = stats.size(), C = ns.size();
  std::vector<std::vector<long>> tallies(static_cast<std::size_t>(reps), std::vector<long>(S * C));

  parallel_for(reps, cfg.threads, [&](long r) {
    RngStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    std::vector<double> p(static_cast<std::size_t>(d));
    DominatingCounter dom(d);
    ChainCounter chain(d);
    ParetoCounter front(d);
    std::vector<long>& out = tallies[static_cast<std::size_t>(r)];
    std::size_t c = 0;
    for (long i = 1; i <= nmax; ++i) {
      sample_into(cfg.model, rng, p);
      if (want_dom) dom.push(p);
      if (want_chain) chain.push(p);
      if (want_front) front.push(p);
      if (i == ns[c]) {
        for (std::size_t s = 0; s < S; ++s) {
          long v = 0;
          switch (stats[s]) {
            case Statistic::Dominating: v = dom.count(); break;
            case Statistic::Chain: v = chain.count(); break;
            case Statistic::Pareto: v = front.count(); break;
            case Statistic::Maxima: v = front.front_size(); break;
          }
          out[c * S + s] = v;
        }
        ++c;
      }
    }
  });

  std::vector<double> x(static_cast<std::size_t>(reps));
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<Reference> refs = references(cfg.model, stats[s], ns);
    for (std::size_t c = 0; c < C; ++c) {
      for (long r = 0; r < reps; ++r) x[static_cast<std::size_t>(r)] = static_cast<double>(tallies[static_cast<std::size_t>(r)][c * S + s]);
      Moments m = moments(x);
      StatRow row;
      row.statistic = stats[s];
      row.n = ns[c];
      row.reps = reps;
      row.mean = m.mean;
      row.var = m.var;
      row.se_mean = m.se_mean;
      row.se_var = m.se_var;
      const Reference& ref = refs[c];
      row.exact_mean = ref.exact_mean;
      row.exact_var = ref.exact_var;
      row.asym_mean = ref.asym_mean;
      row.asym_var = ref.asym_var;
      std::optional<double> rm = ref.exact_mean ? ref.exact_mean : ref.asym_mean;
      std::optional<double> rv = ref.exact_var ? ref.exact_var : ref.asym_var;
      if (rm && m.se_mean > 0.0) row.z_mean = (m.mean - *rm) / m.se_mean;
      if (rv && m.se_var > 0.0) row.z_var = (m.var - *rv) / m.se_var;
      // The asymptotic means carry O(1) offsets that would swamp the shape
      // comparison, so without an exact mean the sample mean centers the data.
      if (reps >= 100) {
        if (ref.exact_mean && ref.exact_var && *ref.exact_var > 0.0) {
          row.reference = "exact";
          row.ks = ks_normal(x, *ref.exact_mean, *ref.exact_var);
        } else if (ref.asym_var && *ref.asym_var > 0.0) {
          row.reference = "asymptotic-variance";
          row.ks = ks_normal(x, ref.exact_mean.value_or(m.mean), *ref.asym_var);
        } else if (m.var > 0.0) {
          row.reference = "sample";
          row.ks = ks_normal(x);
        }
      }
      rep.rows.push_back(std::move(row));
    }
  }
  if (cfg.keep_tallies) rep.tallies = std::move(tallies);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ChiSquareResult kernel_chi_square(const Model& model, long n, long reps, std::uint64_t seed) {
  if (n < 2) throw DomainError("kernel_chi_square needs n >= 2");
  if (reps < 100) throw DomainError("kernel_chi_square needs at least 100 replications");
  KernelDist k = chain_kernel(model, n);
  std::vector<long> counts(static_cast<std::size_t>(n), 0);
  const int d = model.d;
  std::vector<double> first(static_cast<std::size_t>(d)), p(static_cast<std::size_t>(d));
  for (long r = 0; r < reps; ++r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    sample_into(model, rng, first);
    long in = 0;
    for (long i = 1; i < n; ++i) {
      sample_into(model, rng, p);
      if (dominates(p, first)) ++in;
    }
    ++counts[static_cast<std::size_t>(in)];
  }
  // Pool adjacent cells until each expected count reaches 5.
  ChiSquareResult res;
  res.n = n;
  res.reps = reps;
  const double total = static_cast<double>(reps);
  long obs = 0;
  double exp = 0.0;
  for (long i = 0; i < n; ++i) {
    obs += counts[static_cast<std::size_t>(i)];
    exp += total * k.probs[static_cast<std::size_t>(i)];
    if (exp >= 5.0) {
      res.observed.push_back(obs);
      res.expected.push_back(exp);
      obs = 0;
      exp = 0.0;
    }
  }
  if (exp > 0.0 || obs > 0) {
    if (res.expected.empty()) {
      res.observed.push_back(obs);
      res.expected.push_back(exp);
    } else {
      res.observed.back() += obs;
      res.expected.back() += exp;
    }
  }
  for (std::size_t i = 0; i < res.observed.size(); ++i) {
    const double diff = static_cast<double>(res.observed[i]) - res.expected[i];
    res.statistic += diff * diff / res.expected[i];
  }
  res.dof = static_cast<int>(res.observed.size()) - 1;
  res.p_value = res.dof > 0 ? boost::math::gamma_q(0.5 * res.dof, 0.5 * res.statistic) : 1.0;
  return res;
}

MeanRelation mean_relation_check(const Model& model, long n, long reps, std::uint64_t seed, int threads) {
  if (n < 1 || n > 200) throw DomainError("mean_relation_check needs 1 <= n <= 200");
  if (reps < 2) throw DomainError("replications must be at least 2");
  std::vector<double> xs(static_cast<std::size_t>(reps)), ms(static_cast<std::size_t>(reps)),
      diff(static_cast<std::size_t>(reps));
  parallel_for(reps, threads, [&](long r) {
    RngStream rng(seed, static_cast<std::uint64_t>(r));
    std::vector<double> p(static_cast<std::size_t>(model.d));
    ParetoCounter front(model.d);
    double sum = 0.0;
    for (long k = 1; k <= n; ++k) {
      sample_into(model, rng, p);
      front.push(p);
      sum += static_cast<double>(front.front_size()) / static_cast<double>(k);
    }
    const std::size_t i = static_cast<std::size_t>(r);
    xs[i] = static_cast<double>(front.count());
    ms[i] = sum;
    diff[i] = xs[i] - sum;
  });
  MeanRelation out;
  out.model = model;
  out.n = n;
  out.reps = reps;
  out.pareto_mean = moments(xs).mean;
  out.maxima_sum = moments(ms).mean;
  Moments md = moments(diff);
  out.difference = md.mean;
  out.se = md.se_mean;
  out.z = md.se_mean > 0.0 ? md.mean / md.se_mean : 0.0;
  return out;
}

std::string report_json(const ExperimentReport& r, bool include_timing) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(round15(*v)) : ordered_json(nullptr); };
  ordered_json j;
  ordered_json cfg;
  cfg["model"] = to_string(r.config.model.kind);
  cfg["d"] = r.config.model.d;
  cfg["n"] = r.sorted_ns;
  cfg["reps"] = r.config.reps;
  ordered_json st = ordered_json::array();
  for (Statistic s : r.config.statistics) st.push_back(to_string(s));
  cfg["statistics"] = st;
  cfg["seed"] = r.config.seed;
  j["config"] = cfg;
  j["reps_done"] = r.reps_done;
  j["partial"] = r.partial;
  ordered_json rows = ordered_json::array();
  for (const StatRow& row : r.rows) {
    ordered_json o;
    o["statistic"] = to_string(row.statistic);
    o["n"] = row.n;
    o["reps"] = row.reps;
    o["mean"] = round15(row.mean);
    o["var"] = round15(row.var);
    o["se_mean"] = round15(row.se_mean);
    o["se_var"] = round15(row.se_var);
    o["exact_mean"] = opt(row.exact_mean);
    o["exact_var"] = opt(row.exact_var);
    o["asym_mean"] = opt(row.asym_mean);
    o["asym_var"] = opt(row.asym_var);
    o["z_mean"] = opt(row.z_mean);
    o["z_var"] = opt(row.z_var);
    o["reference"] = row.reference;
    o["ks"] = opt(row.ks);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j.dump(2);
}

std::string report_csv(const ExperimentReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt_num(*v) : std::string(); };
  std::ostringstream os;
  os << "statistic,n,reps,mean,var,se_mean,se_var,exact_mean,exact_var,asym_mean,asym_var,z_mean,z_var,reference,ks\n";
  for (const StatRow& row : r.rows)
    os << to_string(row.statistic) << ',' << row.n << ',' << row.reps << ',' << fmt_num(row.mean) << ','
       << fmt_num(row.var) << ',' << fmt_num(row.se_mean) << ',' << fmt_num(row.se_var) << ','
       << opt(row.exact_mean) << ',' << opt(row.exact_var) << ',' << opt(row.asym_mean) << ','
       << opt(row.asym_var) << ',' << opt(row.z_mean) << ',' << opt(row.z_var) << ',' << row.reference << ','
       << opt(row.ks) << '\n';
  return os.str();
}

std::string tallies_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "rep,n";
  for (Statistic s : r.config.statistics) os << ',' << to_string(s);
  os << '\n';
  const std::size_t S = r.config.statistics.size();
  for (std::size_t rep = 0; rep < r.tallies.size(); ++rep)
    for (std::size_t c = 0; c < r.sorted_ns.size(); ++c) {
      os << rep << ',' << r.sorted_ns[c];
      for (std::size_t s = 0; s < S; ++s) os << ',' << r.tallies[rep][c * S + s];
      os << '\n';
    }
  return os.str();
}

}  // namespace recordlab
