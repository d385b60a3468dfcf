#include "contact/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "contact/error.hpp"
#include "contact/parallel.hpp"
#include "contact/stats.hpp"

namespace contact {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw InvalidArgument("infection rate must be positive and finite");
}

// Applies every event with time <= t. Returns early (true) once xi is empty.
bool advance_to(EventStream& stream, Configuration& xi, double t) {
  while (!xi.empty() && stream.peek().time <= t) apply_event(xi, stream.next());
  return xi.empty();
}

nlohmann::json graph_echo(const Graph& g) { return {{"n", g.n_vertices()}, {"m", g.n_edges()}}; }

}  // namespace

std::string to_string(CouplingStatus s) {
  switch (s) {
    case CouplingStatus::Extinct: return "Extinct";
    case CouplingStatus::Coupled: return "Coupled";
    case CouplingStatus::Decoupled: return "Decoupled";
  }
  return "?";
}

Trajectory simulate(const Graph& g, double lambda, const Configuration& start, Seed seed,
                    std::span<const double> checkpoint_times, double time_cap, StreamOptions options) {
  check_lambda(lambda);
  if (!std::is_sorted(checkpoint_times.begin(), checkpoint_times.end())) {
    throw InvalidArgument("simulate: checkpoint times must be sorted");
  }
  if (start.n_vertices() != g.n_vertices()) throw InvalidArgument("simulate: configuration size mismatch");
  Trajectory traj;
  traj.seed = seed;
  Configuration xi = start;
  if (xi.empty()) traj.extinction_time = 0.0;
  EventStream stream(g, lambda, seed, options);
  std::size_t next_cp = 0;
  auto record_until = [&](double t) {
    while (next_cp < checkpoint_times.size() && checkpoint_times[next_cp] < t && checkpoint_times[next_cp] <= time_cap) {
      traj.checkpoints.push_back({checkpoint_times[next_cp], xi});
      ++next_cp;
    }
  };
  while (!xi.empty()) {
    const HarrisEvent& e = stream.peek();
    if (e.time > time_cap) break;
    // State is constant on [previous event, e.time); checkpoints strictly before e see it.
    record_until(e.time);
    apply_event(xi, stream.next());
    if (xi.empty()) traj.extinction_time = e.time;
  }
  record_until(std::numeric_limits<double>::infinity());
  return traj;
}

std::string trajectory_dump(const Trajectory& t) {
  std::ostringstream out;
  out.precision(17);
  const bool small = t.checkpoints.empty() || t.checkpoints.front().state.n_vertices() <= 64;
  if (small) {
    out << "time,infected_count,infected_bitmask_hex\n";
    for (const auto& cp : t.checkpoints) out << cp.time << ',' << cp.state.size() << ',' << cp.state.hex_mask() << '\n';
    return out.str();
  }
  nlohmann::json j = nlohmann::json::object();
  j["seed"] = t.seed;
  j["extinction_time"] = t.extinction_time ? nlohmann::json(*t.extinction_time) : nlohmann::json(nullptr);
  j["checkpoints"] = nlohmann::json::array();
  for (const auto& cp : t.checkpoints) {
    j["checkpoints"].push_back({{"time", cp.time}, {"infected_count", cp.state.size()}, {"infected", cp.state.vertices()}});
  }
  return j.dump();
}

std::optional<double> extinction_time(const Graph& g, double lambda, Seed seed, double time_cap, StreamOptions options) {
  check_lambda(lambda);
  if (g.n_vertices() == 0) throw InvalidArgument("extinction_time: empty graph");
  if (!(time_cap > 0)) throw InvalidArgument("extinction_time: time cap must be positive");
  EventStream stream(g, lambda, seed, options);
  Configuration xi = Configuration::full(g.n_vertices());
  for (;;) {
    const HarrisEvent& e = stream.next();
    if (e.time > time_cap) return std::nullopt;
    apply_event(xi, e);
    if (xi.empty()) return e.time;
  }
}

std::vector<CouplingStatus> coupling_trace(const Graph& g, double lambda, const Configuration& start,
                                           std::span<const double> t_grid, Seed seed) {
  check_lambda(lambda);
  if (start.empty()) throw PreconditionError("coupling: start set must be nonempty");
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw InvalidArgument("coupling: time grid must be sorted");
  EventStream stream(g, lambda, seed);
  Configuration xi = start;
  Configuration full = Configuration::full(g.n_vertices());
  std::vector<CouplingStatus> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    while (!full.empty() && stream.peek().time <= t) {
      const HarrisEvent& e = stream.next();
      apply_event(xi, e);
      apply_event(full, e);
    }
    if (xi.empty()) {
      out.push_back(CouplingStatus::Extinct);
    } else if (xi == full) {
      out.push_back(CouplingStatus::Coupled);
    } else {
      out.push_back(CouplingStatus::Decoupled);
    }
  }
  return out;
}

CouplingStatus coupling_status(const Graph& g, double lambda, const Configuration& start, double t, Seed seed) {
  return coupling_trace(g, lambda, start, std::span(&t, 1), seed).front();
}

ExperimentReport survival_probability(const Graph& g, double lambda, const Configuration& start, double t,
                                      std::size_t replicas, Seed base_seed, std::size_t jobs) {
  check_lambda(lambda);
  if (replicas == 0) throw InvalidArgument("survival_probability: replicas must be >= 1");
  if (!(t >= 0)) throw InvalidArgument("survival_probability: t must be >= 0");
  const auto alive = run_replicas(replicas, jobs, [&](std::size_t i) -> char {
    Configuration xi = start;
    if (xi.empty()) return 0;
    EventStream stream(g, lambda, derive_seed(base_seed, i));
    return advance_to(stream, xi, t) ? 0 : 1;
  });
  const auto survived = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  ExperimentReport r;
  r.quantity = "survival_probability";
  const double p = static_cast<double>(survived) / static_cast<double>(replicas);
  r.estimate = p;
  r.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(replicas));
  const auto ci = stats::wilson_interval(survived, replicas);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.replicas = replicas;
  r.seed = base_seed;
  r.config = {{"lambda", lambda}, {"graph", graph_echo(g)}, {"t", t}, {"start", start.vertices()}};
  return r;
}

ExperimentReport occupancy_probability(const Graph& g, double lambda, const Configuration& start, double t,
                                       double fraction, std::size_t replicas, Seed base_seed, std::size_t jobs) {
  check_lambda(lambda);
  if (replicas == 0) throw InvalidArgument("occupancy_probability: replicas must be >= 1");
  if (!(t >= 0)) throw InvalidArgument("occupancy_probability: t must be >= 0");
  if (!(fraction > 0 && fraction <= 1)) throw InvalidArgument("occupancy_probability: fraction must be in (0, 1]");
  const double need = fraction * static_cast<double>(g.n_vertices());
  const auto hit = run_replicas(replicas, jobs, [&](std::size_t i) -> char {
    Configuration xi = start;
    if (xi.empty()) return 0;
    EventStream stream(g, lambda, derive_seed(base_seed, i));
    advance_to(stream, xi, t);
    return static_cast<double>(xi.size()) >= need ? 1 : 0;
  });
  const auto count = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  ExperimentReport r;
  r.quantity = "occupancy_probability";
  const double p = static_cast<double>(count) / static_cast<double>(replicas);
  r.estimate = p;
  r.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(replicas));
  const auto ci = stats::wilson_interval(count, replicas);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.replicas = replicas;
  r.seed = base_seed;
  r.config = {{"lambda", lambda}, {"graph", graph_echo(g)}, {"t", t}, {"start", start.vertices()},
              {"fraction", fraction}};
  return r;
}

LitResult is_lit(const Graph& f, const Configuration& xi, double c0, std::size_t replicas, Seed base_seed,
                 double lambda, std::size_t jobs) {
  if (!is_line(f) && !is_star(f)) throw PreconditionError("is_lit: graph is neither a line segment nor a star");
  if (!(c0 > 0)) throw InvalidArgument("is_lit: c0 must be positive");
  LitResult out;
  const double n = static_cast<double>(f.n_vertices());
  out.c0 = c0;
  out.horizon = std::exp(c0 * n);
  out.threshold = -std::expm1(-c0 * n);
  out.survival = survival_probability(f, lambda, xi, out.horizon, replicas, base_seed, jobs);
  out.survival.quantity = "lit_survival";
  out.survival.config["c0"] = c0;
  out.survival.config["threshold"] = out.threshold;
  out.lit = *out.survival.estimate > out.threshold;
  out.decided = out.lit ? *out.survival.ci_low > out.threshold : *out.survival.ci_high <= out.threshold;
  return out;
}

RightEdgeTrace right_edge_trace(std::size_t n, double lambda, Seed seed, double t_max) {
  const Graph line = make_line(n);
  EventStream stream(line, lambda, seed);
  Configuration xi(n);
  xi.insert(0);
  RightEdgeTrace out;
  out.steps.emplace_back(0.0, 0);
  Vertex right = 0;
  for (;;) {
    const HarrisEvent& e = stream.next();
    if (e.time > t_max) break;
    apply_event(xi, e);
    if (xi.empty()) {
      out.extinction_time = e.time;
      break;
    }
    const Vertex r = *xi.max_vertex();
    if (r != right) {
      right = r;
      out.steps.emplace_back(e.time, r);
    }
  }
  return out;
}

std::optional<double> first_hitting_time(const RightEdgeTrace& trace, Vertex site) {
  for (const auto& [t, r] : trace.steps)
    if (r >= site) return t;
  return std::nullopt;
}

}  // namespace contact
