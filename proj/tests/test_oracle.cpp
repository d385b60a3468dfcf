#include <cmath>

#include "contact/error.hpp"
#include "contact/oracle.hpp"
#include "contact/process.hpp"
#include "contact/stats.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace contact;
using namespace contact::testing;

TEST_SUITE("oracle") {
  TEST_CASE("hand-solved chains") {
    CHECK(exact_expected_extinction(make_line(1), 2.0) == 1.0);
    CHECK(std::abs(exact_expected_extinction(make_line(2), 2.0) - 2.5) < 1e-9);
    for (double lambda : {0.3, 1.0, 4.0}) {
      CHECK(exact_expected_extinction(make_line(2), lambda) == doctest::Approx(1.5 + lambda / 2).epsilon(1e-10));
    }
    // Path on 3 at lambda = 1: the seven-state system has solution 165/56 from the full state.
    CHECK(exact_expected_extinction(make_line(3), 1.0) == doctest::Approx(165.0 / 56.0).epsilon(1e-10));
  }

  TEST_CASE("frozen values from an independent dense solve") {
    CHECK(exact_expected_extinction(make_line(8), 2.0) == doctest::Approx(25.3615218385).epsilon(1e-9));
    CHECK(exact_expected_extinction(make_star(8), 1.0) == doctest::Approx(9.97386187121).epsilon(1e-9));
    CHECK(exact_expected_extinction(make_line(6), 0.5) == doctest::Approx(3.54534605864).epsilon(1e-9));
    CHECK(exact_expected_extinction(make_star(12), 2.0) == doctest::Approx(498.892108096).epsilon(1e-9));
  }

  TEST_CASE("path on 3 against Monte Carlo") {
    std::vector<double> taus;
    for (Seed s = 0; s < 40000; ++s) taus.push_back(*extinction_time(make_line(3), 1.0, derive_seed(11, s), 1e6));
    const auto m = stats::mean_se(taus);
    CHECK(std::abs(m.mean - exact_expected_extinction(make_line(3), 1.0)) < 3 * m.se);
  }

  TEST_CASE("capacity and argument errors") {
    CHECK_THROWS_AS(exact_expected_extinction(make_line(15), 1.0), CapacityError);
    CHECK_THROWS_AS(exact_transient_survival(make_line(13), 1.0, Configuration::full(13), 1.0), CapacityError);
    CHECK_THROWS_AS(exact_cdf_extinction(make_line(13), 1.0, std::vector<double>{1.0}), CapacityError);
    CHECK_THROWS_AS(exact_transient_survival(make_line(3), 1.0, Configuration::full(3), 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(exact_transient_survival(make_line(3), 1.0, Configuration::full(3), -1.0), InvalidArgument);
    CHECK_THROWS_AS(exact_expected_extinction(make_line(3), 0.0), InvalidArgument);
    CHECK(exact_expected_extinction(make_line(14), 2.0) > 0);
  }

  TEST_CASE("generator structure") {
    for (const auto& [name, g] : small_tree_corpus()) {
      const ChainModel m(g, 1.7);
      CHECK(m.exit_rate(0) == 0.0);
      for (std::uint32_t s = 0; s < m.n_states(); ++s) {
        CHECK(std::abs(m.generator_row_sum(s)) < 1e-12);
        CHECK(m.exit_rate(s) <= m.uniformization_rate() + 1e-12);
        m.for_each_transition(s, [&](std::uint32_t to, double r) {
          CHECK(r > 0);
          CHECK(std::popcount(to ^ s) == 1);
        });
      }
    }
  }

  TEST_CASE("exponential upper bound and monotonicity in lambda") {
    for (const auto& [name, g] : small_tree_corpus()) {
      double prev = 0;
      for (double lambda : {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
        const double m = exact_expected_extinction(g, lambda);
        CHECK(m > 0);
        CHECK(std::log(m) <= static_cast<double>(g.n_vertices()) + 2 * lambda * static_cast<double>(g.n_edges()));
        CHECK(m >= prev);
        prev = m;
      }
    }
  }

  TEST_CASE("transient survival") {
    CHECK(exact_transient_survival(make_star(4), 2.0, Configuration::full(4), 0.0) == 1.0);
    CHECK(exact_transient_survival(make_star(4), 2.0, Configuration(4), 1.0) == 0.0);
    for (double t : {0.1, 1.0, 3.0, 10.0}) {
      CHECK(std::abs(exact_transient_survival(make_line(1), 1.0, Configuration::full(1), t, 1e-12) - std::exp(-t)) <
            1e-11);
    }
    // Reference values from scipy.linalg.expm on the full generator.
    CHECK(exact_transient_survival(make_line(2), 2.0, Configuration::full(2), 1.0) ==
          doctest::Approx(0.7125191248080315).epsilon(1e-10));
    CHECK(exact_transient_survival(make_star(4), 1.0, Configuration::of(4, std::vector<Vertex>{1}), 2.0) ==
          doctest::Approx(0.34093530599978694).epsilon(1e-10));
    CHECK(exact_transient_survival(make_line(5), 2.0, Configuration::full(5), 3.0) ==
          doctest::Approx(0.8103022588572657).epsilon(1e-10));
  }

  TEST_CASE("K2 transient survival against Monte Carlo") {
    const auto mc = survival_probability(make_line(2), 2.0, Configuration::full(2), 1.0, 100000, 21);
    const double exact = exact_transient_survival(make_line(2), 2.0, Configuration::full(2), 1.0);
    CHECK(std::abs(*mc.estimate - exact) < 3 * mc.standard_error);
  }

  TEST_CASE("extinction CDF") {
    const std::vector<double> grid = {0.0, 0.5, 2.0, 5.0};
    const auto cdf = exact_cdf_extinction(make_line(4), 1.5, grid);
    CHECK(cdf[0] == 0.0);
    CHECK(cdf[1] == doctest::Approx(0.013944720866915006).epsilon(1e-9));
    CHECK(cdf[2] == doctest::Approx(0.2361601087076728).epsilon(1e-9));
    CHECK(cdf[3] == doctest::Approx(0.6080245926704023).epsilon(1e-9));

    for (const auto& [name, g] : small_tree_corpus()) {
      for (double lambda : {1.0, 2.0}) {
        const double mean = exact_expected_extinction(g, lambda);
        std::vector<double> ts;
        for (int i = 0; i <= 30; ++i) ts.push_back(mean * 3.0 * i / 30);
        const auto f = exact_cdf_extinction(g, lambda, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
          CHECK(f[i] <= ts[i] / mean + 1e-8);
          if (i > 0) CHECK(f[i] >= f[i - 1] - 1e-12);
          CHECK(std::abs(1 - f[i] - exact_transient_survival(g, lambda, Configuration::full(g.n_vertices()), ts[i])) <
                1e-10);
        }
      }
    }
  }
}
