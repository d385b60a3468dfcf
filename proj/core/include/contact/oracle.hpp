#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "contact/graph.hpp"
#include "contact/harris.hpp"

namespace contact {

/// The full Markov chain on subsets of V, states encoded as bit masks.
class ChainModel {
 public:
  static constexpr std::size_t kMaxVertices = 20;

  ChainModel(const Graph& g, double lambda);

  std::size_t n_vertices() const noexcept { return n_; }
  std::size_t n_states() const noexcept { return std::size_t{1} << n_; }
  double lambda() const noexcept { return lambda_; }
  /// n + 2 lambda m, an upper bound on every exit rate.
  double uniformization_rate() const noexcept { return uniform_rate_; }

  double exit_rate(std::uint32_t state) const noexcept;

  /// Calls fn(target, rate) for every positive-rate transition out of `state`.
  template <class Fn>
  void for_each_transition(std::uint32_t state, Fn&& fn) const {
    for (std::size_t x = 0; x < n_; ++x) {
      const std::uint32_t bit = std::uint32_t{1} << x;
      if (state & bit) {
        fn(state & ~bit, 1.0);
      } else if (const int k = std::popcount(state & neighbors_[x]); k > 0) {
        fn(state | bit, lambda_ * k);
      }
    }
  }

  /// Sum of the generator row: off-diagonal rates minus the exit rate.
  double generator_row_sum(std::uint32_t state) const;

 private:
  std::size_t n_ = 0;
  double lambda_ = 0;
  double uniform_rate_ = 0;
  std::vector<std::uint32_t> neighbors_;
};

/// E[tau] from full occupancy by a direct sparse solve; n <= 14.
double exact_expected_extinction(const Graph& g, double lambda);

/// P[xi^start_t != empty] by uniformization, truncation error below tol; n <= 12.
double exact_transient_survival(const Graph& g, double lambda, const Configuration& start, double t,
                                double tol = 1e-12);

/// P[tau <= t] from full occupancy at each grid time; n <= 12.
std::vector<double> exact_cdf_extinction(const Graph& g, double lambda, std::span<const double> t_grid,
                                         double tol = 1e-12);

inline constexpr std::size_t kExactMeanMaxVertices = 14;
inline constexpr std::size_t kExactTransientMaxVertices = 12;

}  // namespace contact
