#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "contact/decomposition.hpp"
#include "contact/error.hpp"
#include "contact/experiments.hpp"
#include "contact/harris.hpp"
#include "contact/oracle.hpp"
#include "contact/process.hpp"
#include <nlohmann/json.hpp>

namespace contact::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string graph_spec;
  double lambda = 2.0;
  std::optional<std::uint64_t> seed_flag;
  Seed seed = 0;
  std::size_t replicas = 1000;
  double time_cap = 1e6;
  std::size_t jobs = 1;
  std::string format = "json";
  std::string output;
  std::string config_path;
  std::optional<double> c_line, c_star, c0, c_coup, c_split, c_eps;

  std::string start = "full";
  double t_max = 10;
  std::size_t points = 11;
  std::string t_grid;
  std::optional<double> t;
  double alpha = 0.01;
  std::size_t bootstrap = 2000;
  std::string input;
  std::optional<std::size_t> degree_bound;
  std::size_t n_parts = 1;
  std::size_t min_size = 1;
  double a_const = 1.0;
  double eps = 0.1;
  std::string mode = "level4";
  std::string bound = "attract";
  std::string parts;
  std::size_t singletons = 16;
  std::string family = "line";
  std::string sizes = "4,6,8,10,12,14";
  std::size_t budget = 2000;
  std::size_t fixtures = 1000;
  std::size_t max_n = 8;
  double horizon = 5;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || s.front() == '-') throw UsageError("invalid " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_doubles(const std::string& s, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != tok.size()) throw UsageError("invalid " + what + " entry '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty " + what);
  return out;
}

std::vector<Vertex> parse_vertices(const std::string& s, std::size_t n) {
  std::vector<Vertex> out;
  for (const auto& tok : split(s, ',')) {
    const std::size_t v = parse_count(tok, "vertex");
    if (v >= n) throw UsageError("vertex " + tok + " out of range for " + std::to_string(n) + " vertices");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

Configuration parse_start(const std::string& s, std::size_t n) {
  if (s == "full") return Configuration::full(n);
  if (s == "empty") return Configuration(n);
  const auto vs = parse_vertices(s, n);
  return Configuration::of(n, vs);
}

std::vector<VertexSet> parse_parts(const std::string& s, std::size_t n) {
  std::vector<VertexSet> out;
  for (const auto& group : split(s, ';')) out.push_back(make_vertex_set(parse_vertices(group, n)));
  return out;
}

std::vector<double> time_grid(const RunConfig& rc) {
  if (!rc.t_grid.empty()) {
    auto g = parse_doubles(rc.t_grid, "time grid");
    if (!std::is_sorted(g.begin(), g.end())) throw UsageError("time grid must be sorted");
    return g;
  }
  if (rc.points < 2) throw UsageError("--points must be >= 2");
  std::vector<double> g(rc.points);
  for (std::size_t i = 0; i < rc.points; ++i) g[i] = rc.t_max * static_cast<double>(i) / static_cast<double>(rc.points - 1);
  return g;
}

Constants resolve_constants(const RunConfig& rc) {
  Constants c = Constants::defaults();
  bool user = false;
  auto take = [&](const std::optional<double>& v, double& slot) {
    if (v) {
      if (!(*v > 0)) throw UsageError("constants must be positive");
      slot = *v;
      user = true;
    }
  };
  take(rc.c_line, c.c_line);
  take(rc.c_star, c.c_star);
  take(rc.c_coup, c.c_coup);
  take(rc.c_split, c.c_split);
  take(rc.c_eps, c.c_eps);
  c.rederive_c0();
  take(rc.c0, c.c0);
  if (user) c.provenance = Provenance::User;
  return c;
}

json vertex_json(const VertexSet& s) { return json(std::vector<Vertex>(s.begin(), s.end())); }

json value_exact(double v) { return {{"estimate", v}, {"se", "exact"}}; }

class Runner {
 public:
  Runner(RunConfig rc, std::ostream& out) : rc_(std::move(rc)), out_(out) {}

  int run() {
    constants_ = resolve_constants(rc_);
    const std::string& c = rc_.command;
    if (c == "gen") return gen();
    if (c == "simulate") return simulate_cmd();
    if (c == "mean-tau") return mean_tau();
    if (c == "exact") return exact();
    if (c == "exp1") return exp1();
    if (c == "coupling") return coupling();
    if (c == "split") return split_cmd();
    if (c == "classify") return classify();
    if (c == "bounds") return bounds();
    if (c == "growth") return growth();
    if (c == "calibrate") return calibrate();
    if (c == "dual-check") return dual_check();
    throw UsageError("unknown command " + c);
  }

 private:
  const Graph& graph() {
    if (!graph_) {
      if (rc_.graph_spec.empty()) throw UsageError("--graph is required for " + rc_.command);
      graph_ = parse_graph_spec(rc_.graph_spec);
    }
    return *graph_;
  }

  json config(json extra = json::object()) {
    json c = {{"command", rc_.command},
              {"lambda", rc_.lambda},
              {"seed", rc_.seed},
              {"replicas", rc_.replicas},
              {"time_cap", rc_.time_cap},
              {"jobs", rc_.jobs},
              {"format", rc_.format},
              {"constants", constants_}};
    if (!rc_.graph_spec.empty()) {
      const Graph& g = graph();
      c["graph"] = {{"spec", rc_.graph_spec}, {"n", g.n_vertices()}, {"m", g.n_edges()}};
    }
    for (auto& [k, v] : extra.items()) c[k] = v;
    return c;
  }

  void emit(const std::string& text) {
    if (rc_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(rc_.output, std::ios::binary);
    if (!f) throw Error("cannot open output file " + rc_.output);
    f << text;
  }

  int emit_json(json cfg, json result) {
    json doc = {{"config", std::move(cfg)}, {"result", std::move(result)}};
    emit(doc.dump(2) + "\n");
    return kExitOk;
  }

  int emit_csv(const json& cfg, const std::string& body) {
    emit("# config: " + cfg.dump() + "\n" + body);
    return kExitOk;
  }

  bool csv() const { return rc_.format == "csv"; }

  int gen() {
    const Graph& g = graph();
    const json cfg = config();
    if (csv()) return emit_csv(cfg, save_edge_list(g));
    json edges = json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
    return emit_json(cfg, {{"n", g.n_vertices()},
                           {"m", g.n_edges()},
                           {"edges", edges},
                           {"max_degree", g.max_degree()},
                           {"diameter", g.is_connected() ? json(diameter(g)) : json(nullptr)},
                           {"is_tree", g.is_tree()}});
  }

  int simulate_cmd() {
    const Graph& g = graph();
    const Configuration start = parse_start(rc_.start, g.n_vertices());
    const auto grid = time_grid(rc_);
    const Trajectory tr = simulate(g, rc_.lambda, start, rc_.seed, grid, rc_.t_max);
    const json cfg = config({{"start", rc_.start}, {"t_max", rc_.t_max}, {"checkpoints", grid}});
    if (csv()) return emit_csv(cfg, trajectory_dump(tr));
    json cps = json::array();
    for (const auto& cp : tr.checkpoints) {
      cps.push_back({{"time", cp.time}, {"infected_count", cp.state.size()}, {"infected", cp.state.vertices()}});
    }
    return emit_json(cfg, {{"extinction_time", tr.extinction_time ? json(*tr.extinction_time) : json(nullptr)},
                           {"censored", !tr.extinction_time},
                           {"checkpoints", cps}});
  }

  int mean_tau() {
    const Graph& g = graph();
    if (rc_.replicas < 2) throw UsageError("--replicas must be >= 2");
    const auto samples = sample_extinction_times(g, rc_.lambda, rc_.replicas, rc_.time_cap, rc_.seed, rc_.jobs);
    const json cfg = config();
    if (csv()) return emit_csv(cfg, samples_csv(samples));
    ExperimentReport r = summarize_extinction(samples, rc_.seed);
    r.config = {{"lambda", rc_.lambda}, {"graph", rc_.graph_spec}, {"time_cap", rc_.time_cap}};
    return emit_json(cfg, r);
  }

  int exact() {
    const Graph& g = graph();
    const double mean = exact_expected_extinction(g, rc_.lambda);
    const double log_bound = static_cast<double>(g.n_vertices()) + 2 * rc_.lambda * static_cast<double>(g.n_edges());
    json result = {{"expected_extinction", value_exact(mean)},
                   {"upper_bound", {{"log_rhs", log_bound}, {"holds", std::log(mean) <= log_bound}}}};
    json extra = json::object();
    if (rc_.t) {
      const Configuration start = parse_start(rc_.start, g.n_vertices());
      result["survival"] = value_exact(exact_transient_survival(g, rc_.lambda, start, *rc_.t));
      extra = {{"t", *rc_.t}, {"start", rc_.start}};
    }
    if (!rc_.t_grid.empty()) {
      const auto grid = time_grid(rc_);
      const auto cdf = exact_cdf_extinction(g, rc_.lambda, grid);
      json rows = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back({{"t", grid[i]}, {"cdf", cdf[i]}, {"se", "exact"}});
      result["cdf"] = rows;
      extra["t_grid"] = grid;
    }
    return emit_json(config(extra), result);
  }

  int exp1() {
    std::vector<double> values;
    std::size_t censored = 0;
    json extra = {{"alpha", rc_.alpha}, {"bootstrap", rc_.bootstrap}};
    if (!rc_.input.empty()) {
      std::ifstream f(rc_.input);
      if (!f) throw Error("cannot open input file " + rc_.input);
      double v = 0;
      while (f >> v) values.push_back(v);
      if (!f.eof()) throw Error("input file " + rc_.input + " contains a non-numeric token");
      extra["input"] = rc_.input;
    } else {
      const auto samples = sample_extinction_times(graph(), rc_.lambda, rc_.replicas, rc_.time_cap, rc_.seed, rc_.jobs);
      for (const auto& s : samples) {
        if (s.censored) {
          ++censored;
        } else {
          values.push_back(s.value);
        }
      }
    }
    const Exp1Result r = exp1_test(values, rc_.alpha, rc_.bootstrap, rc_.seed);
    json result = r;
    result["censored_dropped"] = censored;
    result["ks_distance_se"] = "exact";
    return emit_json(config(extra), result);
  }

  int coupling() {
    const Graph& g = graph();
    const Configuration start = parse_start(rc_.start, g.n_vertices());
    const auto grid = time_grid(rc_);
    const auto curve = coupling_decay_curve(g, rc_.lambda, start, grid, rc_.replicas, rc_.seed, rc_.jobs);
    const json cfg = config({{"start", rc_.start}, {"t_grid", grid}});
    if (csv()) {
      std::ostringstream s;
      s.precision(17);
      s << "t,decoupled,se,ci_low,ci_high\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        s << grid[i] << ',' << *curve[i].estimate << ',' << curve[i].standard_error << ',' << *curve[i].ci_low << ','
          << *curve[i].ci_high << '\n';
      }
      return emit_csv(cfg, s.str());
    }
    return emit_json(cfg, curve);
  }

  int split_cmd() {
    const Graph& g = graph();
    const std::size_t d = rc_.degree_bound.value_or(g.max_degree());
    json extra = {{"degree_bound", d}};
    if (rc_.n_parts > 1) {
      extra["parts"] = rc_.n_parts;
      extra["min_size"] = rc_.min_size;
      const auto parts = iterated_split(g, rc_.n_parts, rc_.min_size, d);
      json ps = json::array();
      for (const auto& p : parts) ps.push_back({{"size", p.size()}, {"vertices", vertex_json(p)}});
      return emit_json(config(extra), {{"parts", ps}});
    }
    const TreeSplit s = split_edge_balanced(g, d);
    return emit_json(config(extra), {{"removed_edge", {s.removed_edge.u, s.removed_edge.v}},
                                     {"side_a", vertex_json(s.side_a)},
                                     {"side_b", vertex_json(s.side_b)},
                                     {"size_a", s.side_a.size()},
                                     {"size_b", s.side_b.size()},
                                     {"size_floor", g.n_vertices() / d}});
  }

  int classify() {
    const Graph& g = graph();
    ClassifyMode mode;
    if (rc_.mode == "level3") {
      mode = ClassifyMode::Level3;
    } else if (rc_.mode == "level4") {
      mode = ClassifyMode::Level4;
    } else {
      throw UsageError("--mode must be level3 or level4");
    }
    const Decomposition d = classify_tree(g, rc_.a_const, rc_.eps, mode);
    json parts = json::array();
    for (const auto& p : d.parts) parts.push_back(vertex_json(p));
    return emit_json(config({{"a_const", rc_.a_const}, {"eps", rc_.eps}, {"mode", rc_.mode}}),
                     {{"kind", to_string(d.kind)},
                      {"branch", d.branch},
                      {"witness", d.witness ? json(*d.witness) : json(nullptr)},
                      {"level_k", d.level_k ? json(*d.level_k) : json(nullptr)},
                      {"log_n", d.log_n},
                      {"degree_threshold", d.degree_threshold},
                      {"part_size_floor", d.part_size_floor},
                      {"count_bound", d.count_bound},
                      {"part_count", d.parts.size()},
                      {"parts", parts}});
  }

  int bounds() {
    const Graph& g = graph();
    if (rc_.bound == "attract") {
      const auto grid = time_grid(rc_);
      const auto checks = check_attract_bound(g, rc_.lambda, grid, rc_.replicas, rc_.seed, AttractMode::Auto, rc_.jobs);
      return emit_json(config({{"bound", rc_.bound}, {"t_grid", grid}}), checks);
    }
    if (rc_.bound == "product") {
      std::vector<VertexSet> parts;
      json extra = {{"bound", rc_.bound}};
      if (!rc_.parts.empty()) {
        parts = parse_parts(rc_.parts, g.n_vertices());
        extra["parts"] = rc_.parts;
      } else {
        const std::size_t d = rc_.degree_bound.value_or(g.max_degree());
        const std::size_t n_parts = std::max<std::size_t>(rc_.n_parts, 2);
        parts = iterated_split(g, n_parts, rc_.min_size, d);
        extra["n_parts"] = n_parts;
        extra["min_size"] = rc_.min_size;
        extra["degree_bound"] = d;
      }
      const ProductBound pb =
          check_product_bound(g, parts, rc_.lambda, rc_.replicas, rc_.seed, constants_, rc_.time_cap, rc_.jobs);
      return emit_json(config(extra), pb);
    }
    if (rc_.bound == "floor") {
      const BoundCheck b = survival_floor_check(g, rc_.lambda, rc_.eps, constants_.c_eps, rc_.replicas, rc_.seed,
                                                rc_.singletons, rc_.jobs);
      return emit_json(config({{"bound", rc_.bound}, {"eps", rc_.eps}, {"singletons", rc_.singletons}}), b);
    }
    throw UsageError("--bound must be attract, product or floor");
  }

  int growth() {
    GraphFamily fam;
    try {
      fam = parse_family(rc_.family);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    std::vector<std::size_t> sizes;
    for (const auto& tok : split(rc_.sizes, ',')) sizes.push_back(parse_count(tok, "size"));
    const GrowthCurve c = growth_curve(fam, sizes, rc_.lambda, rc_.replicas, rc_.time_cap, rc_.seed, rc_.jobs);
    const json cfg = config({{"family", rc_.family}, {"sizes", sizes}});
    if (csv()) {
      std::ostringstream s;
      s.precision(17);
      s << "size,estimate,se,replicas,censored\n";
      for (const auto& row : c.rows) {
        s << row.size << ',';
        if (row.report.estimate) s << *row.report.estimate;
        s << ',' << row.report.standard_error << ',' << row.report.replicas << ',' << row.report.censored << '\n';
      }
      return emit_csv(cfg, s.str());
    }
    return emit_json(cfg, c);
  }

  int calibrate() {
    const Calibration c = calibrate_constants(rc_.lambda, rc_.budget, rc_.seed, rc_.jobs);
    return emit_json(config({{"budget", rc_.budget}}), c);
  }

  int dual_check() {
    if (rc_.max_n < 1) throw UsageError("--max-n must be >= 1");
    SequentialRng rng(rc_.seed, 0xD0A1u);
    std::size_t dual_failures = 0, path_failures = 0;
    for (std::size_t f = 0; f < rc_.fixtures; ++f) {
      const Graph g = rc_.graph_spec.empty() ? random_tree(1 + rng.below(rc_.max_n), derive_seed(rc_.seed, f)) : graph();
      const std::size_t n = g.n_vertices();
      const HarrisSystem h = HarrisSystem::sample(g, rc_.lambda, rc_.horizon, derive_seed(rc_.seed ^ 0x5eedu, f));
      Configuration a(n);
      for (Vertex v = 0; v < n; ++v)
        if (rng.uniform() < 0.5) a.insert(v);
      const auto x = static_cast<Vertex>(rng.below(n));
      const double t = rng.uniform() * rc_.horizon;
      const Configuration fwd = evolve(h, a, 0, t);
      const Configuration dual = dual_evolve(h, {x, t}, t);
      if (fwd.contains(x) != a.intersects(dual)) ++dual_failures;
      for (Vertex y = 0; y < n; ++y) {
        bool reached = false;
        for (Vertex s : a.vertices()) reached = reached || reaches(h, {s, 0}, {y, t});
        if (reached != fwd.contains(y)) ++path_failures;
      }
    }
    const int code = emit_json(config({{"fixtures", rc_.fixtures}, {"max_n", rc_.max_n}, {"horizon", rc_.horizon}}),
                               {{"fixtures", rc_.fixtures},
                                {"duality_failures", dual_failures},
                                {"path_failures", path_failures},
                                {"se", "exact"}});
    if (dual_failures + path_failures > 0) throw Error("dual-check found failures");
    return code;
  }

  RunConfig rc_;
  std::ostream& out_;
  Constants constants_;
  std::optional<Graph> graph_;
};

// Turns the --config JSON into flags for any key not already given on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  std::vector<std::string> out = args;
  for (auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "--command" || flag == "--config") continue;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) text += ',';
        text += value[i].is_string() ? value[i].get<std::string>() : value[i].dump();
      }
    } else {
      text = value.dump();
    }
    out.push_back(flag + "=" + text);
  }
  return out;
}

void add_common(CLI::App& sub, RunConfig& rc) {
  sub.add_option("--graph", rc.graph_spec, "line:N, star:N, tree:N:SEED or file:PATH");
  sub.add_option("--lambda", rc.lambda, "infection rate per directed edge")->check(CLI::PositiveNumber);
  sub.add_option("--seed", rc.seed_flag, "base seed (default 0, or $CONTACT_BENCH_SEED)");
  sub.add_option("--replicas", rc.replicas, "Monte Carlo replicas");
  sub.add_option("--time-cap", rc.time_cap, "censoring cap")->check(CLI::PositiveNumber);
  sub.add_option("--jobs", rc.jobs, "worker threads")->check(CLI::PositiveNumber);
  sub.add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--output", rc.output, "write to this file instead of stdout");
  sub.add_option("--config", rc.config_path, "JSON file mirroring these flags");
  sub.add_option("--c-line", rc.c_line);
  sub.add_option("--c-star", rc.c_star);
  sub.add_option("--c0", rc.c0);
  sub.add_option("--c-coup", rc.c_coup);
  sub.add_option("--c-split", rc.c_split);
  sub.add_option("--c-eps", rc.c_eps);
}

void add_grid(CLI::App& sub, RunConfig& rc) {
  sub.add_option("--t-max", rc.t_max, "last grid time")->check(CLI::NonNegativeNumber);
  sub.add_option("--points", rc.points, "grid points from 0 to --t-max");
  sub.add_option("--t-grid", rc.t_grid, "explicit comma-separated sorted times");
}

}  // namespace

Graph parse_graph_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() >= 2 && parts[0] == "file") return load_edge_list_file(spec.substr(5));
  try {
    if (parts.size() == 2 && parts[0] == "line") return make_line(parse_count(parts[1], "size"));
    if (parts.size() == 2 && parts[0] == "star") return make_star(parse_count(parts[1], "size"));
    if (parts.size() == 3 && parts[0] == "tree") {
      return random_tree(parse_count(parts[1], "size"), parse_count(parts[2], "seed"));
    }
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("bad graph spec '") + spec + "': " + e.what());
  }
  throw UsageError("bad graph spec '" + spec + "' (expected line:N, star:N, tree:N:SEED or file:PATH)");
}

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Contact process simulator and verification bench", "contact-bench"};
  app.require_subcommand(1);
  app.fallthrough(false);

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {{"gen", "generate a graph"},
                        {"simulate", "one trajectory with checkpoints"},
                        {"mean-tau", "Monte Carlo mean extinction time"},
                        {"exact", "exact extinction quantities on small graphs"},
                        {"exp1", "exponential-law test of normalized extinction times"},
                        {"coupling", "decoupling probability curve"},
                        {"split", "balanced edge split of a tree"},
                        {"classify", "three-way tree case analysis"},
                        {"bounds", "inequality checks"},
                        {"growth", "mean extinction time against size"},
                        {"calibrate", "calibrate the model constants"},
                        {"dual-check", "duality and infection-path identities on random fixtures"}};
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(*sub, rc);
    sub->callback([&rc, name = std::string(s.name)] { rc.command = name; });
  }
  auto* simulate_sub = app.get_subcommand("simulate");
  simulate_sub->add_option("--start", rc.start, "full, empty or comma-separated vertices");
  add_grid(*simulate_sub, rc);

  auto* exact_sub = app.get_subcommand("exact");
  exact_sub->add_option("--t", rc.t, "also report transient survival at this time");
  exact_sub->add_option("--start", rc.start, "start set for --t");
  exact_sub->add_option("--t-grid", rc.t_grid, "also report P[tau <= t] on these times");

  auto* exp1_sub = app.get_subcommand("exp1");
  exp1_sub->add_option("--alpha", rc.alpha, "test level");
  exp1_sub->add_option("--bootstrap", rc.bootstrap, "bootstrap resamples");
  exp1_sub->add_option("--input", rc.input, "whitespace-separated samples instead of simulating");

  auto* coupling_sub = app.get_subcommand("coupling");
  coupling_sub->add_option("--start", rc.start, "start set");
  add_grid(*coupling_sub, rc);

  auto* split_sub = app.get_subcommand("split");
  split_sub->add_option("--degree-bound", rc.degree_bound, "degree bound d (default: max degree)");
  split_sub->add_option("--parts", rc.n_parts, "iterate to this many parts");
  split_sub->add_option("--min-size", rc.min_size, "minimum part size when iterating");

  auto* classify_sub = app.get_subcommand("classify");
  classify_sub->add_option("--a-const", rc.a_const, "the constant A")->check(CLI::PositiveNumber);
  classify_sub->add_option("--eps", rc.eps, "exponent epsilon")->check(CLI::PositiveNumber);
  classify_sub->add_option("--mode", rc.mode, "level3 or level4")->check(CLI::IsMember({"level3", "level4"}));

  auto* bounds_sub = app.get_subcommand("bounds");
  bounds_sub->add_option("--bound", rc.bound, "attract, product or floor")
      ->check(CLI::IsMember({"attract", "product", "floor"}));
  add_grid(*bounds_sub, rc);
  bounds_sub->add_option("--parts", rc.parts, "parts as 0,1,2;3,4 (product)");
  bounds_sub->add_option("--n-parts", rc.n_parts, "split into this many parts when --parts is absent");
  bounds_sub->add_option("--min-size", rc.min_size, "minimum part size for the split");
  bounds_sub->add_option("--degree-bound", rc.degree_bound, "degree bound for the split");
  bounds_sub->add_option("--eps", rc.eps, "exponent epsilon (floor)")->check(CLI::PositiveNumber);
  bounds_sub->add_option("--singletons", rc.singletons, "singletons sampled (floor)");

  auto* growth_sub = app.get_subcommand("growth");
  growth_sub->add_option("--family", rc.family, "line, star or random_tree");
  growth_sub->add_option("--sizes", rc.sizes, "comma-separated increasing sizes");

  app.get_subcommand("calibrate")->add_option("--budget", rc.budget, "total replica budget");

  auto* dual_sub = app.get_subcommand("dual-check");
  dual_sub->add_option("--fixtures", rc.fixtures, "number of random fixtures");
  dual_sub->add_option("--max-n", rc.max_n, "largest random tree");
  dual_sub->add_option("--horizon", rc.horizon, "Harris horizon per fixture")->check(CLI::PositiveNumber);

  auto active_help = [&]() {
    for (CLI::App* sub : app.get_subcommands())
      if (sub->parsed()) return sub->help();
    return app.help();
  };

  try {
    std::vector<std::string> expanded = expand_config(args);
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::CallForHelp&) {
    out << active_help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << active_help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (rc.seed_flag) {
    rc.seed = *rc.seed_flag;
  } else if (const char* env = std::getenv("CONTACT_BENCH_SEED"); env && *env) {
    try {
      rc.seed = parse_count(env, "CONTACT_BENCH_SEED");
    } catch (const UsageError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  try {
    return Runner(rc, out).run();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace contact::cli
