#include "contact/oracle.hpp"

#include <Eigen/SparseCore>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <string>

#include "contact/error.hpp"

namespace contact {

namespace {

constexpr std::size_t kMaxUniformizationSteps = 50'000'000;

void check_inputs(const Graph& g, double lambda, std::size_t cap, const char* what) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw InvalidArgument(std::string(what) + ": lambda must be positive");
  if (g.n_vertices() == 0) throw InvalidArgument(std::string(what) + ": empty graph");
  if (g.n_vertices() > cap) {
    throw CapacityError(std::string(what) + ": " + std::to_string(g.n_vertices()) + " vertices exceeds the cap of " +
                        std::to_string(cap));
  }
}

void check_tol(double tol) {
  if (!(tol > 0) || tol >= 1) throw InvalidArgument("tolerance must lie in (0, 1)");
  if (tol < 1e-15) throw InvalidArgument("tolerance below 1e-15 is not attainable in double precision");
}

// Smallest K with P[Poisson(mu) > K] <= tol.
std::size_t poisson_truncation(double mu, double tol) {
  if (mu == 0) return 0;
  auto tail = [mu](std::size_t k) { return boost::math::gamma_p(static_cast<double>(k) + 1.0, mu); };
  std::size_t hi = static_cast<std::size_t>(mu) + 1;
  while (tail(hi) > tol) {
    hi *= 2;
    if (hi > kMaxUniformizationSteps) throw CapacityError("uniformization needs too many steps; reduce t");
  }
  std::size_t lo = 0;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tail(mid) <= tol) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

// a[k] = P[embedded uniformized chain is at the empty state after k steps].
std::vector<double> absorption_sequence(const ChainModel& model, std::uint32_t start, std::size_t steps) {
  const double rate = model.uniformization_rate();
  std::vector<double> cur(model.n_states(), 0.0);
  std::vector<double> next(model.n_states(), 0.0);
  cur[start] = 1.0;
  std::vector<double> a;
  a.reserve(steps + 1);
  a.push_back(cur[0]);
  for (std::size_t k = 0; k < steps; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    next[0] = cur[0];
    for (std::uint32_t s = 1; s < cur.size(); ++s) {
      const double p = cur[s];
      if (p == 0) continue;
      next[s] += p * (1.0 - model.exit_rate(s) / rate);
      model.for_each_transition(s, [&](std::uint32_t to, double r) { next[to] += p * r / rate; });
    }
    cur.swap(next);
    a.push_back(cur[0]);
  }
  return a;
}

double poisson_mix(const std::vector<double>& a, double mu, std::size_t k_max) {
  if (mu == 0) return a[0];
  const double log_mu = std::log(mu);
  double sum = 0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (a[k] == 0) continue;
    const double kd = static_cast<double>(k);
    sum += a[k] * std::exp(-mu + kd * log_mu - std::lgamma(kd + 1.0));
  }
  return sum;
}

}  // namespace

ChainModel::ChainModel(const Graph& g, double lambda)
    : n_(g.n_vertices()), lambda_(lambda), neighbors_(g.n_vertices(), 0) {
  if (n_ > kMaxVertices) throw CapacityError("chain model supports at most 20 vertices");
  for (const Edge& e : g.edges()) {
    neighbors_[e.u] |= std::uint32_t{1} << e.v;
    neighbors_[e.v] |= std::uint32_t{1} << e.u;
  }
  uniform_rate_ = static_cast<double>(n_) + 2.0 * lambda * static_cast<double>(g.n_edges());
}

double ChainModel::exit_rate(std::uint32_t state) const noexcept {
  double rate = 0;
  for_each_transition(state, [&](std::uint32_t, double r) { rate += r; });
  return rate;
}

double ChainModel::generator_row_sum(std::uint32_t state) const {
  double off = 0;
  for_each_transition(state, [&](std::uint32_t to, double r) {
    if (r < 0 || to == state) throw InternalError("generator has a negative or diagonal off-diagonal entry");
    off += r;
  });
  return off - exit_rate(state);
}

double exact_expected_extinction(const Graph& g, double lambda) {
  check_inputs(g, lambda, kExactMeanMaxVertices, "exact_expected_extinction");
  const ChainModel model(g, lambda);
  const auto dim = static_cast<Eigen::Index>(model.n_states() - 1);  // the empty state is eliminated

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(dim) * (g.n_vertices() + 1));
  for (std::uint32_t s = 1; s < model.n_states(); ++s) {
    const auto row = static_cast<Eigen::Index>(s - 1);
    double q = 0;
    model.for_each_transition(s, [&](std::uint32_t to, double r) {
      q += r;
      if (to != 0) entries.emplace_back(row, static_cast<Eigen::Index>(to - 1), -r);
    });
    entries.emplace_back(row, row, q);
  }
  Eigen::SparseMatrix<double> a(dim, dim);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  const Eigen::SparseMatrix<double, Eigen::RowMajor> a_rows = a;

  const Eigen::VectorXd b = Eigen::VectorXd::Ones(dim);
  auto residual_of = [&](const Eigen::VectorXd& x) {
    return (b - a_rows * x).lpNorm<Eigen::Infinity>() / std::max(1.0, x.lpNorm<Eigen::Infinity>());
  };
  Eigen::VectorXd x;
  double residual = INFINITY;
  {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>> solver;
    solver.setTolerance(1e-13);
    solver.setMaxIterations(20'000);
    solver.compute(a_rows);
    if (solver.info() == Eigen::Success) {
      x = solver.solve(b);
      if (solver.info() == Eigen::Success || solver.info() == Eigen::NoConvergence) residual = residual_of(x);
    }
  }
  if (!(residual <= 1e-10)) {
    // Slow chains can stall the Krylov solver; fall back to a direct factorization.
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw InternalError("sparse LU factorization failed");
    x = lu.solve(b);
    for (int iter = 0; iter < 20; ++iter) {
      residual = residual_of(x);
      if (residual <= 1e-10) break;
      x += lu.solve(b - a * x);
    }
  }
  if (!(residual <= 1e-10)) throw InternalError("linear solve did not reach residual 1e-10");
  return x(dim - 1);  // full mask is the last state
}

double exact_transient_survival(const Graph& g, double lambda, const Configuration& start, double t, double tol) {
  check_inputs(g, lambda, kExactTransientMaxVertices, "exact_transient_survival");
  check_tol(tol);
  if (!(t >= 0) || !std::isfinite(t)) throw InvalidArgument("exact_transient_survival: t must be finite and >= 0");
  if (start.n_vertices() != g.n_vertices()) throw InvalidArgument("exact_transient_survival: configuration size mismatch");
  if (start.empty()) return 0.0;
  if (t == 0) return 1.0;
  std::uint32_t mask = 0;
  for (Vertex v : start.vertices()) mask |= std::uint32_t{1} << v;
  const ChainModel model(g, lambda);
  const double mu = model.uniformization_rate() * t;
  const std::size_t k = poisson_truncation(mu, tol);
  return 1.0 - poisson_mix(absorption_sequence(model, mask, k), mu, k);
}

std::vector<double> exact_cdf_extinction(const Graph& g, double lambda, std::span<const double> t_grid, double tol) {
  check_inputs(g, lambda, kExactTransientMaxVertices, "exact_cdf_extinction");
  check_tol(tol);
  double t_max = 0;
  for (double t : t_grid) {
    if (!(t >= 0) || !std::isfinite(t)) throw InvalidArgument("exact_cdf_extinction: grid times must be finite and >= 0");
    t_max = std::max(t_max, t);
  }
  const ChainModel model(g, lambda);
  const double rate = model.uniformization_rate();
  const std::size_t k_max = poisson_truncation(rate * t_max, tol);
  const auto full = static_cast<std::uint32_t>(model.n_states() - 1);
  const std::vector<double> a = absorption_sequence(model, full, k_max);
  std::vector<double> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double mu = rate * t;
    out.push_back(poisson_mix(a, mu, poisson_truncation(mu, tol)));
  }
  return out;
}

}  // namespace contact
