#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "contact/graph.hpp"
#include "contact/harris.hpp"
#include "contact/report.hpp"

namespace contact {

struct Checkpoint {
  double time = 0;
  Configuration state;
};

/// One realization read off a Harris system: checkpoints plus extinction bookkeeping.
struct Trajectory {
  Seed seed = 0;
  std::vector<Checkpoint> checkpoints;
  std::optional<double> extinction_time;  // absent when still alive at the cap
};

enum class CouplingStatus { Extinct, Coupled, Decoupled };
std::string to_string(CouplingStatus s);

/// Runs the process from `start` until extinction or `time_cap`, recording the
/// state at each (sorted) checkpoint time not beyond the cap.
Trajectory simulate(const Graph& g, double lambda, const Configuration& start, Seed seed,
                    std::span<const double> checkpoint_times, double time_cap, StreamOptions options = {});

/// CSV `time,infected_count,infected_bitmask_hex` for n <= 64, JSON otherwise.
std::string trajectory_dump(const Trajectory& t);

/// Extinction time from full occupancy, or nullopt if the process is still
/// alive at `time_cap` (right-censored).
std::optional<double> extinction_time(const Graph& g, double lambda, Seed seed, double time_cap,
                                      StreamOptions options = {});

/// Status of xi^start against xi^full on one Harris system at each sorted grid time.
std::vector<CouplingStatus> coupling_trace(const Graph& g, double lambda, const Configuration& start,
                                           std::span<const double> t_grid, Seed seed);
CouplingStatus coupling_status(const Graph& g, double lambda, const Configuration& start, double t, Seed seed);

/// P[xi^start_t != empty] over independent replicas, Wilson 95% interval.
ExperimentReport survival_probability(const Graph& g, double lambda, const Configuration& start, double t,
                                      std::size_t replicas, Seed base_seed, std::size_t jobs = 1);

/// P[|xi^start_t| >= fraction * n]. On a star from any nonempty start at t = 1
/// this is the occupancy diagnostic; the fraction is left to the caller.
ExperimentReport occupancy_probability(const Graph& g, double lambda, const Configuration& start, double t,
                                       double fraction = 1.0 / 40, std::size_t replicas = 1000, Seed base_seed = 0,
                                       std::size_t jobs = 1);

struct LitResult {
  ExperimentReport survival;  // estimate of P[xi_{exp(c0 n)} != empty | xi_0 = xi]
  double horizon = 0;         // exp(c0 n)
  double threshold = 0;       // 1 - exp(-c0 n)
  double c0 = 0;
  bool lit = false;           // point estimate exceeds the threshold
  bool decided = false;       // the whole 95% interval lies on one side
};

/// Whether a line segment or star is lit in configuration `xi`.
LitResult is_lit(const Graph& f, const Configuration& xi, double c0, std::size_t replicas, Seed base_seed,
                 double lambda, std::size_t jobs = 1);

struct RightEdgeTrace {
  std::vector<std::pair<double, Vertex>> steps;  // (time, rightmost infected) at every change
  std::optional<double> extinction_time;
};

/// Rightmost infected site of the process on the n-vertex segment started from {0}.
RightEdgeTrace right_edge_trace(std::size_t n, double lambda, Seed seed, double t_max);

/// First time the trace reaches `site`, if it does.
std::optional<double> first_hitting_time(const RightEdgeTrace& trace, Vertex site);

}  // namespace contact
