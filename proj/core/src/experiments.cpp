#include "contact/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "contact/error.hpp"
#include "contact/oracle.hpp"
#include "contact/parallel.hpp"
#include "contact/process.hpp"

namespace contact {

namespace {

nlohmann::json graph_echo(const Graph& g) { return {{"n", g.n_vertices()}, {"m", g.n_edges()}}; }

ExperimentReport exact_report(std::string quantity, double value) {
  ExperimentReport r;
  r.quantity = std::move(quantity);
  r.estimate = value;
  r.ci_low = value;
  r.ci_high = value;
  r.exact = true;
  return r;
}

// Extinction time of a single-seed run from an arbitrary start, nullopt past the cap.
std::optional<double> extinction_from(const Graph& g, double lambda, const Configuration& start, Seed seed,
                                      double cap) {
  return simulate(g, lambda, start, seed, {}, cap).extinction_time;
}

// First time site n-1 is infected for the segment process started from {0}.
std::optional<double> crossing_time(std::size_t n, double lambda, Seed seed, double t_max) {
  const Graph line = make_line(n);
  EventStream stream(line, lambda, seed);
  Configuration xi(n);
  xi.insert(0);
  const auto target = static_cast<Vertex>(n - 1);
  if (n == 1) return 0.0;
  for (;;) {
    const HarrisEvent& e = stream.next();
    if (e.time > t_max) return std::nullopt;
    apply_event(xi, e);
    if (xi.empty()) return std::nullopt;
    if (xi.contains(target)) return e.time;
  }
}

struct MeanLog {
  double log_mean = 0;
  double se = 0;  // of the log mean, by the delta method
  bool exact = false;
  ExperimentReport report;
};

MeanLog mean_log(const Graph& g, double lambda, std::size_t replicas, double cap, Seed seed, std::size_t jobs,
                 std::string label) {
  MeanLog out;
  if (g.n_vertices() <= kExactTransientMaxVertices) {
    const double m = exact_expected_extinction(g, lambda);
    out.report = exact_report(std::move(label), m);
    out.log_mean = std::log(m);
    out.exact = true;
  } else {
    out.report = estimate_mean_extinction(g, lambda, replicas, cap, seed, jobs);
    out.report.quantity = std::move(label);
    if (!out.report.estimate) throw PreconditionError("every replica was censored; raise the time cap");
    out.log_mean = std::log(*out.report.estimate);
    out.se = out.report.standard_error / *out.report.estimate;
  }
  out.report.config["graph"] = graph_echo(g);
  out.report.config["lambda"] = lambda;
  return out;
}

std::string fmt_double(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

}  // namespace

std::vector<ExtinctionSample> sample_extinction_times(const Graph& g, double lambda, std::size_t replicas,
                                                     double time_cap, Seed base_seed, std::size_t jobs) {
  return run_replicas(replicas, jobs, [&](std::size_t i) {
    ExtinctionSample s;
    s.replica = i;
    s.seed = derive_seed(base_seed, i);
    const auto tau = extinction_time(g, lambda, s.seed, time_cap);
    s.censored = !tau;
    s.value = tau ? *tau : time_cap;
    return s;
  });
}

std::string samples_csv(std::span<const ExtinctionSample> samples) {
  std::ostringstream out;
  out.precision(17);
  out << "replica,seed,value,censored\n";
  for (const auto& s : samples) out << s.replica << ',' << s.seed << ',' << s.value << ',' << (s.censored ? 1 : 0) << '\n';
  return out.str();
}

ExperimentReport summarize_extinction(std::span<const ExtinctionSample> samples, Seed base_seed) {
  std::vector<double> values;
  values.reserve(samples.size());
  std::size_t censored = 0;
  for (const auto& s : samples) {
    if (s.censored) {
      ++censored;
    } else {
      values.push_back(s.value);
    }
  }
  ExperimentReport r;
  r.quantity = "mean_extinction_time";
  r.replicas = samples.size();
  r.censored = censored;
  r.biased_low = censored > 0;
  r.seed = base_seed;
  if (!values.empty()) {
    const auto ms = stats::mean_se(values);
    r.estimate = ms.mean;
    r.standard_error = ms.se;
    r.ci_low = ms.mean - stats::kZ95 * ms.se;
    r.ci_high = ms.mean + stats::kZ95 * ms.se;
  }
  return r;
}

ExperimentReport estimate_mean_extinction(const Graph& g, double lambda, std::size_t replicas, double time_cap,
                                          Seed base_seed, std::size_t jobs) {
  if (replicas < 2) throw InvalidArgument("estimate_mean_extinction: replicas must be >= 2");
  const auto samples = sample_extinction_times(g, lambda, replicas, time_cap, base_seed, jobs);
  ExperimentReport r = summarize_extinction(samples, base_seed);
  r.config = {{"lambda", lambda}, {"graph", graph_echo(g)}, {"time_cap", time_cap}};
  return r;
}

Exp1Result exp1_test(std::span<const double> samples, double alpha, std::size_t bootstrap, Seed seed) {
  if (samples.size() < 50) throw PreconditionError("exp1_test: need at least 50 uncensored samples");
  if (!(alpha > 0 && alpha < 1)) throw InvalidArgument("exp1_test: alpha must lie in (0, 1)");
  if (bootstrap < 10) throw InvalidArgument("exp1_test: bootstrap size must be >= 10");
  double sum = 0;
  for (double x : samples) {
    if (!(x >= 0) || !std::isfinite(x)) throw InvalidArgument("exp1_test: samples must be finite and >= 0");
    sum += x;
  }
  if (!(sum > 0)) throw PreconditionError("exp1_test: samples have zero mean");
  const double mean = sum / static_cast<double>(samples.size());
  std::vector<double> normalized(samples.begin(), samples.end());
  for (double& x : normalized) x /= mean;

  Exp1Result out;
  out.samples = samples.size();
  out.alpha = alpha;
  out.bootstrap = bootstrap;
  out.ks_distance = stats::ks_distance_exp1(std::move(normalized));

  using Key = std::tuple<std::size_t, double, std::size_t, Seed>;
  static std::mutex mu;
  static std::map<Key, double> cache;
  const Key key{samples.size(), alpha, bootstrap, seed};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) out.threshold = it->second;
  }
  if (out.threshold == 0) {
    SequentialRng rng(derive_seed(seed, samples.size()), 0xB0075u);
    std::vector<double> dist(bootstrap);
    std::vector<double> draw(samples.size());
    for (double& d : dist) {
      double s = 0;
      for (double& x : draw) s += (x = rng.exponential());
      for (double& x : draw) x /= s / static_cast<double>(draw.size());
      d = stats::ks_distance_exp1(draw);
    }
    out.threshold = stats::quantile(std::move(dist), 1 - alpha);
    std::lock_guard lock(mu);
    cache.emplace(key, out.threshold);
  }
  out.pass = out.ks_distance <= out.threshold;
  return out;
}

std::vector<BoundCheck> check_attract_bound(const Graph& g, double lambda, std::span<const double> t_grid,
                                            std::size_t replicas, Seed base_seed, AttractMode mode,
                                            std::size_t jobs) {
  const bool exact = mode == AttractMode::Exact ||
                     (mode == AttractMode::Auto && g.n_vertices() <= kExactTransientMaxVertices);
  std::vector<BoundCheck> out;
  out.reserve(t_grid.size());
  auto name = [](double t) { return "attract_bound[t=" + fmt_double(t) + "]"; };
  if (exact) {
    const double mean = exact_expected_extinction(g, lambda);
    const auto cdf = exact_cdf_extinction(g, lambda, t_grid);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      BoundCheck b = make_bound_check(name(t_grid[i]), cdf[i], 0, t_grid[i] / mean, Relation::LessEqual, 1e-8);
      b.exact = true;
      out.push_back(std::move(b));
    }
    return out;
  }
  if (replicas < 2) throw InvalidArgument("check_attract_bound: replicas must be >= 2");
  const double t_max = t_grid.empty() ? 0.0 : *std::max_element(t_grid.begin(), t_grid.end());
  const bool exact_mean = g.n_vertices() <= kExactMeanMaxVertices;
  const double cap = exact_mean ? std::max(t_max, 1e-9) : std::max(t_max, 1e6);
  const auto samples = sample_extinction_times(g, lambda, replicas, cap, base_seed, jobs);
  double mean = 0;
  std::string note;
  if (exact_mean) {
    mean = exact_expected_extinction(g, lambda);
    note = "exact mean, Monte Carlo CDF";
  } else {
    const auto summary = summarize_extinction(samples, base_seed);
    if (!summary.estimate) throw PreconditionError("check_attract_bound: every replica was censored");
    mean = *summary.estimate;
    note = summary.biased_low ? "estimated mean, biased low by censoring" : "estimated mean";
  }
  const double r = static_cast<double>(replicas);
  for (double t : t_grid) {
    const auto hits = std::count_if(samples.begin(), samples.end(),
                                    [t](const ExtinctionSample& s) { return !s.censored && s.value <= t; });
    const double p = static_cast<double>(hits) / r;
    BoundCheck b = make_bound_check(name(t), p, std::sqrt(p * (1 - p) / r), t / mean, Relation::LessEqual);
    b.exact = false;
    b.note = note;
    out.push_back(std::move(b));
  }
  return out;
}

ProductBound check_product_bound(const Graph& tree, std::span<const VertexSet> parts, double lambda,
                                 std::size_t replicas, Seed base_seed, const Constants& constants, double time_cap,
                                 std::size_t jobs) {
  if (!tree.is_tree()) throw PreconditionError("check_product_bound: graph is not a tree");
  if (parts.empty()) throw PreconditionError("check_product_bound: no parts");
  std::vector<char> used(tree.n_vertices(), 0);
  std::vector<InducedSubgraph> subs;
  for (const auto& p : parts) {
    if (p.empty()) throw PreconditionError("check_product_bound: empty part");
    for (Vertex v : p) {
      if (v >= tree.n_vertices()) throw PreconditionError("check_product_bound: part vertex out of range");
      if (used[v]) throw PreconditionError("check_product_bound: parts overlap at vertex " + std::to_string(v));
      used[v] = 1;
    }
    subs.push_back(induced_subgraph(tree, p));
    if (!subs.back().graph.is_connected()) throw PreconditionError("check_product_bound: a part is not connected");
  }

  ProductBound out;
  const MeanLog whole = mean_log(tree, lambda, replicas, time_cap, derive_seed(base_seed, 0), jobs, "mean_extinction_time");
  out.means.push_back(whole.report);
  bool all_exact = whole.exact;
  double sum_log = 0, var_parts = 0, max_log = -INFINITY, max_se = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const MeanLog m = mean_log(subs[i].graph, lambda, replicas, time_cap, derive_seed(base_seed, i + 1), jobs,
                               "part_mean_extinction_time");
    out.means.push_back(m.report);
    out.means.back().config["part"] = i;
    all_exact = all_exact && m.exact;
    sum_log += m.log_mean;
    var_parts += m.se * m.se;
    if (m.log_mean > max_log) {
      max_log = m.log_mean;
      max_se = m.se;
    }
  }
  const double big_n = static_cast<double>(parts.size());
  const double n = static_cast<double>(tree.n_vertices());
  const double slack = all_exact ? 1e-9 : 0.0;
  const double se_all = std::sqrt(whole.se * whole.se + var_parts);

  const double strong_rhs = std::log(constants.c_split) - (big_n + 1) * std::log(2 * n * n * n) + sum_log;
  out.strong = make_bound_check("product_bound_strong", whole.log_mean, se_all, strong_rhs, Relation::GreaterEqual, slack);
  const double weak_rhs = std::log(0.5) + (std::log(0.5) + sum_log) / big_n;
  out.weak = make_bound_check("product_bound_weak", whole.log_mean, std::sqrt(whole.se * whole.se + var_parts / (big_n * big_n)),
                              weak_rhs, Relation::GreaterEqual, slack);
  out.monotonicity = make_bound_check("monotonicity", whole.log_mean, std::sqrt(whole.se * whole.se + max_se * max_se),
                                      max_log, Relation::GreaterEqual, slack);
  for (BoundCheck* b : {&out.strong, &out.weak, &out.monotonicity}) {
    b->exact = all_exact;
    b->note = "log scale";
  }
  if (strong_rhs < max_log) out.strong.note = "log scale; correction factor dominates, holds vacuously at this size";
  return out;
}

std::vector<ExperimentReport> coupling_decay_curve(const Graph& g, double lambda, const Configuration& start,
                                                   std::span<const double> t_grid, std::size_t replicas,
                                                   Seed base_seed, std::size_t jobs) {
  if (replicas == 0) throw InvalidArgument("coupling_decay_curve: replicas must be >= 1");
  const auto traces = run_replicas(replicas, jobs, [&](std::size_t i) {
    const auto trace = coupling_trace(g, lambda, start, t_grid, derive_seed(base_seed, i));
    std::vector<char> decoupled(trace.size());
    for (std::size_t k = 0; k < trace.size(); ++k) {
      decoupled[k] = trace[k] == CouplingStatus::Decoupled;
      if (k > 0 && decoupled[k] && !decoupled[k - 1]) throw InternalError("coupling status left an absorbing state");
    }
    return decoupled;
  });
  std::vector<ExperimentReport> out;
  const double r = static_cast<double>(replicas);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    std::size_t count = 0;
    for (const auto& tr : traces) count += tr[k] ? 1 : 0;
    ExperimentReport rep;
    rep.quantity = "decoupled_probability";
    const double p = static_cast<double>(count) / r;
    rep.estimate = p;
    rep.standard_error = std::sqrt(p * (1 - p) / r);
    const auto ci = stats::wilson_interval(count, replicas);
    rep.ci_low = ci.low;
    rep.ci_high = ci.high;
    rep.replicas = replicas;
    rep.seed = base_seed;
    rep.config = {{"lambda", lambda}, {"graph", graph_echo(g)}, {"t", t_grid[k]}, {"start", start.vertices()}};
    out.push_back(std::move(rep));
  }
  return out;
}

std::string to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::Line: return "line";
    case GraphFamily::Star: return "star";
    case GraphFamily::RandomTree: return "random_tree";
  }
  return "?";
}

GraphFamily parse_family(const std::string& s) {
  if (s == "line") return GraphFamily::Line;
  if (s == "star") return GraphFamily::Star;
  if (s == "random_tree" || s == "tree") return GraphFamily::RandomTree;
  throw InvalidArgument("unknown graph family '" + s + "' (expected line, star or random_tree)");
}

Graph make_family_member(GraphFamily f, std::size_t n, Seed seed) {
  switch (f) {
    case GraphFamily::Line: return make_line(n);
    case GraphFamily::Star: return make_star(n);
    case GraphFamily::RandomTree: return random_tree(n, seed);
  }
  throw InvalidArgument("unknown graph family");
}

GrowthCurve growth_curve(GraphFamily family, std::span<const std::size_t> sizes, double lambda, std::size_t replicas,
                         double time_cap, Seed base_seed, std::size_t jobs) {
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw InvalidArgument("growth_curve: sizes must be strictly increasing");
  GrowthCurve out;
  out.family = family;
  out.lambda = lambda;
  std::vector<double> xs, ys;
  for (std::size_t n : sizes) {
    const Graph g = make_family_member(family, n, derive_seed(base_seed, 0x7EE0000u + n));
    GrowthRow row;
    row.size = n;
    row.report = estimate_mean_extinction(g, lambda, replicas, time_cap, derive_seed(base_seed, n), jobs);
    row.report.config["family"] = to_string(family);
    if (row.report.censored == 0 && row.report.estimate && *row.report.estimate > 0) {
      out.fitted_sizes.push_back(n);
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(*row.report.estimate));
    }
    out.rows.push_back(std::move(row));
  }
  if (xs.size() >= 3) out.fit = stats::linear_fit(xs, ys);
  return out;
}

double survival_floor_horizon(std::size_t n, double eps, double c_eps) {
  if (n < 2) throw PreconditionError("survival floor needs at least two vertices");
  const double dn = static_cast<double>(n);
  return std::exp(c_eps * dn / std::pow(std::log(dn), 1 + eps));
}

BoundCheck survival_floor_check(const Graph& g, double lambda, double eps, double c_eps, std::size_t replicas,
                                Seed base_seed, std::size_t max_singletons, std::size_t jobs) {
  if (!(eps > 0)) throw InvalidArgument("survival_floor_check: eps must be positive");
  if (!(c_eps > 0)) throw InvalidArgument("survival_floor_check: c_eps must be positive");
  if (max_singletons == 0) throw InvalidArgument("survival_floor_check: need at least one singleton");
  const std::size_t n = g.n_vertices();
  const double horizon = survival_floor_horizon(n, eps, c_eps);
  std::vector<Vertex> picks(n);
  std::iota(picks.begin(), picks.end(), Vertex{0});
  if (n > max_singletons) {
    SequentialRng rng(derive_seed(base_seed, 0x5106u));
    for (std::size_t i = 0; i < max_singletons; ++i) std::swap(picks[i], picks[i + rng.below(n - i)]);
    picks.resize(max_singletons);
    std::sort(picks.begin(), picks.end());
  }
  double worst = 2, worst_se = 0;
  Vertex worst_vertex = 0;
  for (Vertex x : picks) {
    const Vertex one[] = {x};
    const auto rep = survival_probability(g, lambda, Configuration::of(n, one), horizon, replicas,
                                          derive_seed(base_seed, x), jobs);
    if (*rep.estimate < worst) {
      worst = *rep.estimate;
      worst_se = rep.standard_error;
      worst_vertex = x;
    }
  }
  BoundCheck b = make_bound_check("survival_floor", worst, worst_se, c_eps, Relation::GreaterEqual);
  b.exact = false;
  b.note = "min over " + std::to_string(picks.size()) + " singletons at vertex " + std::to_string(worst_vertex) +
           ", T = " + fmt_double(horizon);
  return b;
}

Calibration calibrate_constants(double lambda, std::size_t budget, Seed base_seed, std::size_t jobs) {
  static constexpr double kGrid[] = {0.5, 0.4, 0.3, 0.25, 0.2, 0.15, 0.1, 0.075, 0.05, 0.04, 0.03, 0.02, 0.01};
  static constexpr std::size_t kLineSizes[] = {6, 8, 10};
  static constexpr std::size_t kCrossSizes[] = {10, 20};
  static constexpr std::size_t kStarProbe = 10;
  static constexpr std::size_t kTreeProbe = 12;
  static constexpr std::size_t kFloorProbe = 10;
  static constexpr double kFloorEps = 1.0;
  const double c_min = kGrid[std::size(kGrid) - 1];
  const double c_max = kGrid[0];

  Calibration out;
  out.constants = Constants::defaults();
  const std::size_t per_probe = budget / 5;
  if (per_probe < 20) {
    out.warnings.push_back("budget of " + std::to_string(budget) +
                           " replicas is exhausted before any probe can run; returning defaults");
    return out;
  }
  auto wilson = [](std::size_t k, std::size_t n) { return stats::wilson_interval(k, n); };
  auto largest = [&](auto&& feasible) -> std::optional<double> {
    for (double c : kGrid)
      if (feasible(c)) return c;
    return std::nullopt;
  };
  auto record = [&](const char* name, std::optional<double> c, nlohmann::json data, double& slot) {
    data["constant"] = name;
    data["chosen"] = c ? nlohmann::json(*c) : nlohmann::json(nullptr);
    out.probes.push_back(std::move(data));
    if (c) {
      slot = *c;
    } else {
      out.warnings.push_back(std::string("no feasible ") + name + " on the grid; keeping the default");
    }
  };

  // Line: exact mean growth and the crossing event within n / c.
  {
    std::vector<double> log_means;
    for (std::size_t n : kLineSizes) log_means.push_back(std::log(exact_expected_extinction(make_line(n), lambda)));
    const std::size_t reps = per_probe / std::size(kCrossSizes);
    std::vector<std::vector<std::optional<double>>> hits;
    for (std::size_t n : kCrossSizes) {
      const Seed s = derive_seed(base_seed, 0x11E0u + n);
      hits.push_back(run_replicas(reps, jobs, [&](std::size_t i) {
        return crossing_time(n, lambda, derive_seed(s, i), static_cast<double>(n) / c_min);
      }));
      out.replicas_used += reps;
    }
    nlohmann::json crossing = nlohmann::json::array();
    const auto c = largest([&](double c) {
      for (std::size_t k = 0; k < std::size(kLineSizes); ++k)
        if (log_means[k] < c * static_cast<double>(kLineSizes[k])) return false;
      for (std::size_t k = 0; k < std::size(kCrossSizes); ++k) {
        const double limit = static_cast<double>(kCrossSizes[k]) / c;
        const auto count = static_cast<std::size_t>(
            std::count_if(hits[k].begin(), hits[k].end(), [&](const auto& h) { return h && *h <= limit; }));
        if (wilson(count, reps).low <= c) return false;
      }
      return true;
    });
    record("c_line", c, {{"exact_log_means", log_means}, {"crossing_replicas", reps}}, out.constants.c_line);
  }

  // Star: exact mean growth and survival from full occupancy to exp(c n).
  {
    std::vector<double> log_means;
    for (std::size_t n : kLineSizes) log_means.push_back(std::log(exact_expected_extinction(make_star(n), lambda)));
    const Graph star = make_star(kStarProbe);
    const double cap = std::exp(c_max * static_cast<double>(kStarProbe));
    const auto samples = sample_extinction_times(star, lambda, per_probe, cap, derive_seed(base_seed, 0x57A2u), jobs);
    out.replicas_used += per_probe;
    const auto c = largest([&](double c) {
      for (std::size_t k = 0; k < std::size(kLineSizes); ++k)
        if (log_means[k] < c * static_cast<double>(kLineSizes[k])) return false;
      const double cn = c * static_cast<double>(kStarProbe);
      const double horizon = std::exp(cn);
      const auto alive = static_cast<std::size_t>(std::count_if(
          samples.begin(), samples.end(), [&](const ExtinctionSample& s) { return s.censored || s.value > horizon; }));
      return wilson(alive, per_probe).low > -std::expm1(-cn);
    });
    record("c_star", c, {{"exact_log_means", log_means}, {"survival_replicas", per_probe}}, out.constants.c_star);
  }
  out.constants.rederive_c0();

  // Coupling: decoupling probability at multiples of n (log n)^3 on a probe tree.
  {
    const Graph tree = random_tree(kTreeProbe, derive_seed(base_seed, 0x7EE5u));
    const double unit = static_cast<double>(kTreeProbe) * std::pow(std::log(static_cast<double>(kTreeProbe)), 3);
    const std::vector<double> grid = {unit, 2 * unit, 3 * unit};
    const Vertex one[] = {0};
    const auto curve = coupling_decay_curve(tree, lambda, Configuration::of(kTreeProbe, one), grid, per_probe,
                                            derive_seed(base_seed, 0xC0u), jobs);
    out.replicas_used += per_probe;
    std::vector<double> highs;
    for (const auto& r : curve) highs.push_back(*r.ci_high);
    const auto c = largest([&](double c) {
      for (std::size_t k = 0; k < grid.size(); ++k)
        if (highs[k] > std::exp(-c * static_cast<double>(k + 1))) return false;
      return true;
    });
    record("c_coup", c, {{"decoupled_ci_high", highs}, {"replicas", per_probe}}, out.constants.c_coup);
  }

  // Survival floor from singletons on a probe tree.
  {
    const Graph tree = random_tree(kFloorProbe, derive_seed(base_seed, 0xF100u));
    const std::size_t reps = per_probe / kFloorProbe;
    const double cap = survival_floor_horizon(kFloorProbe, kFloorEps, c_max);
    std::vector<std::vector<std::optional<double>>> taus;
    for (Vertex x = 0; x < kFloorProbe; ++x) {
      const Vertex one[] = {x};
      const Configuration start = Configuration::of(kFloorProbe, one);
      const Seed s = derive_seed(base_seed, 0xF200u + x);
      taus.push_back(run_replicas(reps, jobs, [&](std::size_t i) {
        return extinction_from(tree, lambda, start, derive_seed(s, i), cap);
      }));
      out.replicas_used += reps;
    }
    const auto c = largest([&](double c) {
      const double horizon = survival_floor_horizon(kFloorProbe, kFloorEps, c);
      for (const auto& ts : taus) {
        const auto alive = static_cast<std::size_t>(
            std::count_if(ts.begin(), ts.end(), [&](const auto& t) { return !t || *t > horizon; }));
        if (wilson(alive, reps).low <= c) return false;
      }
      return true;
    });
    record("c_eps", c, {{"eps", kFloorEps}, {"replicas_per_singleton", reps}}, out.constants.c_eps);
  }
  out.probes.push_back({{"constant", "c_split"}, {"chosen", out.constants.c_split}, {"note", "not probed"}});
  out.constants.provenance = Provenance::Calibrated;
  return out;
}

void to_json(nlohmann::json& j, const Exp1Result& r) {
  j = {{"ks_distance", r.ks_distance}, {"threshold", r.threshold}, {"alpha", r.alpha},
       {"samples", r.samples},         {"bootstrap", r.bootstrap}, {"pass", r.pass}};
}

void to_json(nlohmann::json& j, const ProductBound& p) {
  j = {{"strong", p.strong}, {"weak", p.weak}, {"monotonicity", p.monotonicity}, {"means", p.means}};
}

void to_json(nlohmann::json& j, const GrowthCurve& c) {
  j = nlohmann::json::object();
  j["family"] = to_string(c.family);
  j["lambda"] = c.lambda;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : c.rows) j["rows"].push_back({{"size", r.size}, {"report", r.report}});
  j["fitted_sizes"] = c.fitted_sizes;
  if (c.fit) {
    j["fit"] = {{"slope", c.fit->slope},
                {"intercept", c.fit->intercept},
                {"slope_se", c.fit->slope_se},
                {"slope_ci95", {c.fit->slope_ci.low, c.fit->slope_ci.high}},
                {"points", c.fit->points}};
  } else {
    j["fit"] = nullptr;
  }
}

void to_json(nlohmann::json& j, const Calibration& c) {
  j = {{"constants", c.constants}, {"probes", c.probes}, {"warnings", c.warnings}, {"replicas_used", c.replicas_used}};
}

}  // namespace contact
