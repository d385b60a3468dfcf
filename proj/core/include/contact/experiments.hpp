#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contact/graph.hpp"
#include "contact/harris.hpp"
#include "contact/report.hpp"
#include "contact/stats.hpp"

namespace contact {

struct ExtinctionSample {
  std::size_t replica = 0;
  Seed seed = 0;
  double value = 0;  // tau, or the cap when censored
  bool censored = false;
};

/// One extinction time per replica from full occupancy, in replica order.
std::vector<ExtinctionSample> sample_extinction_times(const Graph& g, double lambda, std::size_t replicas,
                                                     double time_cap, Seed base_seed, std::size_t jobs = 1);

/// CSV with header `replica,seed,value,censored`.
std::string samples_csv(std::span<const ExtinctionSample> samples);

/// Mean and standard error over uncensored replicas; censoring is counted and flags the estimate biased low.
ExperimentReport estimate_mean_extinction(const Graph& g, double lambda, std::size_t replicas, double time_cap,
                                          Seed base_seed, std::size_t jobs = 1);
ExperimentReport summarize_extinction(std::span<const ExtinctionSample> samples, Seed base_seed);

struct Exp1Result {
  double ks_distance = 0;
  double threshold = 0;  // bootstrap (1 - alpha) quantile of the KS distance
  double alpha = 0;
  std::size_t samples = 0;
  std::size_t bootstrap = 0;
  bool pass = false;
};

/// KS test of mean-normalized samples against Exp(1), threshold by parametric bootstrap.
Exp1Result exp1_test(std::span<const double> samples, double alpha, std::size_t bootstrap = 2000, Seed seed = 0);

enum class AttractMode { Auto, Exact, MonteCarlo };

/// P[tau <= t] <= t / E[tau] on the grid. Auto uses the oracle for n <= 12;
/// MonteCarlo estimates the CDF but still takes an exact mean when one is available.
std::vector<BoundCheck> check_attract_bound(const Graph& g, double lambda, std::span<const double> t_grid,
                                            std::size_t replicas, Seed base_seed, AttractMode mode = AttractMode::Auto,
                                            std::size_t jobs = 1);

struct ProductBound {
  BoundCheck strong;
  BoundCheck weak;
  BoundCheck monotonicity;
  std::vector<ExperimentReport> means;  // whole tree first, then the parts
};

/// Compares E[tau_G] against the product of the parts' mean extinction times,
/// all in log space. Means are exact when the (sub)graph has at most 12 vertices.
ProductBound check_product_bound(const Graph& tree, std::span<const VertexSet> parts, double lambda,
                                 std::size_t replicas, Seed base_seed, const Constants& constants = {},
                                 double time_cap = 1e6, std::size_t jobs = 1);

/// P[Decoupled at t] for each grid time.
std::vector<ExperimentReport> coupling_decay_curve(const Graph& g, double lambda, const Configuration& start,
                                                   std::span<const double> t_grid, std::size_t replicas,
                                                   Seed base_seed, std::size_t jobs = 1);

enum class GraphFamily { Line, Star, RandomTree };
std::string to_string(GraphFamily f);
GraphFamily parse_family(const std::string& s);
Graph make_family_member(GraphFamily f, std::size_t n, Seed seed);

struct GrowthRow {
  std::size_t size = 0;
  ExperimentReport report;
};

struct GrowthCurve {
  GraphFamily family = GraphFamily::Line;
  double lambda = 0;
  std::vector<GrowthRow> rows;
  std::vector<std::size_t> fitted_sizes;  // sizes with no censored replica
  std::optional<stats::LinearFit> fit;    // log mean vs size
};

GrowthCurve growth_curve(GraphFamily family, std::span<const std::size_t> sizes, double lambda, std::size_t replicas,
                         double time_cap, Seed base_seed, std::size_t jobs = 1);

struct Calibration {
  Constants constants;
  nlohmann::json probes = nlohmann::json::array();
  std::vector<std::string> warnings;
  std::size_t replicas_used = 0;
};

/// Grid search for the largest constants whose empirical inequalities hold with
/// margin at small probe sizes. `budget` caps the total replica count.
Calibration calibrate_constants(double lambda, std::size_t budget, Seed base_seed, std::size_t jobs = 1);

/// Minimum over (sampled) singletons A of P[xi^A_T != empty] at
/// T = exp(c_eps n / (log n)^(1+eps)), compared against c_eps.
BoundCheck survival_floor_check(const Graph& g, double lambda, double eps, double c_eps, std::size_t replicas,
                                Seed base_seed, std::size_t max_singletons = 16, std::size_t jobs = 1);

double survival_floor_horizon(std::size_t n, double eps, double c_eps);

void to_json(nlohmann::json& j, const Exp1Result& r);
void to_json(nlohmann::json& j, const ProductBound& p);
void to_json(nlohmann::json& j, const GrowthCurve& c);
void to_json(nlohmann::json& j, const Calibration& c);

}  // namespace contact
