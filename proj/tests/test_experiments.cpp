#include <algorithm>
#include <cmath>

#include "contact/error.hpp"
#include "contact/experiments.hpp"
#include "contact/oracle.hpp"
#include "contact/process.hpp"
#include "doctest.h"

using namespace contact;

namespace {

std::vector<double> exp1_draws(std::size_t n, Seed seed) {
  SequentialRng rng(seed, 0xABCu);
  std::vector<double> xs(n);
  for (double& x : xs) x = rng.exponential();
  return xs;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("mean extinction estimates") {
    const auto one = estimate_mean_extinction(make_line(1), 2.0, 10000, 1e6, 1);
    CHECK(std::abs(*one.estimate - 1.0) < 0.03);
    CHECK(one.censored == 0);
    CHECK_FALSE(one.biased_low);
    const auto k2 = estimate_mean_extinction(make_line(2), 2.0, 100000, 1e6, 2);
    CHECK(std::abs(*k2.estimate - 2.5) < 3 * k2.standard_error);
    CHECK_THROWS_AS(estimate_mean_extinction(make_line(2), 2.0, 1, 1e6, 2), InvalidArgument);

    const auto capped = estimate_mean_extinction(make_star(10), 2.0, 50, 1e-3, 3);
    CHECK_FALSE(capped.estimate.has_value());
    CHECK(capped.censored == 50);
    const auto partial = estimate_mean_extinction(make_star(6), 2.0, 500, 20.0, 3);
    CHECK(partial.censored > 0);
    CHECK(partial.censored < 500);
    CHECK(partial.biased_low);
    CHECK(partial.standard_error >= 0);
  }

  TEST_CASE("estimates are reproducible and independent of jobs") {
    const auto a = estimate_mean_extinction(random_tree(7, 2), 1.5, 2000, 1e6, 44, 1);
    const auto b = estimate_mean_extinction(random_tree(7, 2), 1.5, 2000, 1e6, 44, 3);
    CHECK(*a.estimate == *b.estimate);
    CHECK(a.standard_error == b.standard_error);
    nlohmann::json ja = a, jb = b;
    CHECK(ja.dump() == jb.dump());
    const auto samples = sample_extinction_times(make_line(3), 1.0, 3, 1e6, 5);
    const std::string csv = samples_csv(samples);
    CHECK(csv.rfind("replica,seed,value,censored\n0,", 0) == 0);
  }

  TEST_CASE("Exp(1) test") {
    const auto ok = exp1_test(exp1_draws(2000, 1), 0.01);
    CHECK(ok.pass);
    CHECK(ok.threshold > 0);
    const std::vector<double> constant(100, 3.0);
    CHECK_FALSE(exp1_test(constant, 0.01).pass);
    std::vector<double> taus;
    for (Seed s = 0; s < 1000; ++s) taus.push_back(*extinction_time(make_line(1), 1.0, derive_seed(8, s), 1e6));
    CHECK(exp1_test(taus, 0.01).pass);
    CHECK_THROWS_AS(exp1_test(std::vector<double>(49, 1.0), 0.01), PreconditionError);
    // A uniform sample is far from exponential.
    std::vector<double> uni;
    SequentialRng rng(4);
    for (int i = 0; i < 2000; ++i) uni.push_back(rng.uniform());
    CHECK_FALSE(exp1_test(uni, 0.01).pass);
  }

  TEST_CASE("Exp(1) test is calibrated") {
    for (double alpha : {0.05, 0.1}) {
      int rejections = 0;
      for (Seed rep = 0; rep < 500; ++rep) rejections += exp1_test(exp1_draws(200, 1000 + rep), alpha, 2000, 77).pass ? 0 : 1;
      const double rate = rejections / 500.0;
      CHECK(rate >= alpha / 2);
      CHECK(rate <= 2 * alpha);
    }
  }

  TEST_CASE("attractiveness bound") {
    const std::vector<double> grid = {0.0, 0.5, 1.0, 3.0, 10.0, 40.0};
    for (const Graph& g : {make_line(5), make_star(6), random_tree(7, 1)}) {
      for (const auto& b : check_attract_bound(g, 1.0, grid, 0, 1)) {
        CHECK(b.exact);
        CHECK(b.verdict == Verdict::Holds);
      }
    }
    const auto zero = check_attract_bound(make_star(6), 1.0, std::vector<double>{0.0}, 0, 1);
    CHECK(zero[0].lhs == 0.0);
    CHECK(zero[0].rhs == 0.0);
    const double mean = exact_expected_extinction(make_star(6), 1.0);
    std::vector<double> mc_grid;
    for (int i = 1; i <= 10; ++i) mc_grid.push_back(mean * 0.3 * i);
    for (const auto& b : check_attract_bound(make_star(6), 1.0, mc_grid, 10000, 2, AttractMode::MonteCarlo)) {
      CHECK_FALSE(b.exact);
      CHECK(b.verdict != Verdict::Violated);
    }
  }

  TEST_CASE("product bound") {
    const Graph line = make_line(8);
    const std::vector<VertexSet> whole = {{0, 1, 2, 3, 4, 5, 6, 7}};
    const auto same = check_product_bound(line, whole, 2.0, 0, 1);
    CHECK(same.monotonicity.margin == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(same.monotonicity.verdict == Verdict::Holds);

    const std::vector<VertexSet> halves = {{0, 1, 2, 3}, {4, 5, 6, 7}};
    const auto pb = check_product_bound(line, halves, 2.0, 0, 1);
    CHECK(pb.monotonicity.verdict == Verdict::Holds);
    CHECK(pb.weak.verdict == Verdict::Holds);
    CHECK(pb.strong.verdict == Verdict::Holds);
    CHECK(pb.strong.exact);
    CHECK(pb.strong.note.find("vacuously") != std::string::npos);
    CHECK(pb.means.size() == 3);

    const std::vector<VertexSet> overlap = {{0, 1, 2}, {2, 3}};
    CHECK_THROWS_AS(check_product_bound(line, overlap, 2.0, 0, 1), PreconditionError);
    const std::vector<VertexSet> split = {{0, 2}};
    CHECK_THROWS_AS(check_product_bound(line, split, 2.0, 0, 1), PreconditionError);
  }

  TEST_CASE("coupling decay curve") {
    const Graph g = random_tree(10, 3);
    const std::vector<double> grid = {0.0, 1.0, 5.0, 20.0, 80.0};
    const auto one = coupling_decay_curve(g, 2.0, Configuration::of(10, std::vector<Vertex>{0}), grid, 300, 1);
    CHECK(*one[0].estimate == 1.0);
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(*one[k].estimate <= *one[k - 1].estimate);
    const auto full = coupling_decay_curve(g, 2.0, Configuration::full(10), grid, 50, 1);
    for (const auto& r : full) CHECK(*r.estimate == 0.0);

    const Graph t30 = random_tree(30, 9);
    const std::vector<double> longer = {0.0, 10.0, 50.0, 200.0};
    const auto curve = coupling_decay_curve(t30, 2.0, Configuration::of(30, std::vector<Vertex>{0}), longer, 200, 2);
    for (std::size_t k = 1; k < longer.size(); ++k) CHECK(*curve[k].estimate <= *curve[k - 1].estimate);
    MESSAGE("random tree n=30: P[decoupled at t=200] = " << *curve.back().estimate);
  }

  TEST_CASE("growth curves") {
    const std::vector<std::size_t> lines = {4, 6, 8, 10, 12, 14};
    const auto hi = growth_curve(GraphFamily::Line, lines, 2.0, 400, 1e6, 1);
    REQUIRE(hi.fit.has_value());
    CHECK(hi.fit->slope > 0);
    CHECK(hi.fit->slope_ci.low > 0);
    const auto lo = growth_curve(GraphFamily::Line, lines, 0.1, 400, 1e6, 1);
    REQUIRE(lo.fit.has_value());
    CHECK(lo.fit->slope < hi.fit->slope);
    CHECK(std::abs(lo.fit->slope) < 0.1);
    const std::vector<std::size_t> stars = {8, 12, 16, 20, 24};
    const auto st = growth_curve(GraphFamily::Star, stars, 1.0, 200, 1e6, 1);
    REQUIRE(st.fit.has_value());
    CHECK(st.fit->slope > 0);
    const std::vector<std::size_t> bad = {4, 4};
    CHECK_THROWS_AS(growth_curve(GraphFamily::Line, bad, 1.0, 10, 1e6, 1), InvalidArgument);
  }

  TEST_CASE("calibration") {
    const Calibration hi = calibrate_constants(2.0, 1000, 5);
    CHECK(hi.constants.provenance == Provenance::Calibrated);
    CHECK(hi.constants.c0 == doctest::Approx(std::min(hi.constants.c_line, hi.constants.c_star) / 3));
    CHECK(hi.replicas_used <= 1000);
    const Calibration lo = calibrate_constants(1.0, 1000, 5);
    CHECK(lo.constants.c_line <= hi.constants.c_line);

    // Re-run the crossing event with fresh seeds at the calibrated constant.
    const double c = hi.constants.c_line;
    for (std::size_t n : {10, 20}) {
      int hits = 0;
      const int reps = 400;
      for (Seed s = 0; s < reps; ++s) {
        const auto tr = right_edge_trace(n, 2.0, derive_seed(987654, s), n / c);
        hits += first_hitting_time(tr, static_cast<Vertex>(n - 1)).has_value() ? 1 : 0;
      }
      CHECK(hits / static_cast<double>(reps) > c);
    }

    const Calibration broke = calibrate_constants(2.0, 10, 5);
    CHECK_FALSE(broke.warnings.empty());
    CHECK(broke.constants.provenance == Provenance::Default);
  }

  TEST_CASE("survival floor") {
    const Graph g = make_line(4);
    const double horizon = survival_floor_horizon(4, 1.0, 0.5);
    const auto b = survival_floor_check(g, 1.0, 1.0, 0.5, 20000, 3);
    double worst = 1;
    for (Vertex x = 0; x < 4; ++x) {
      worst = std::min(worst, exact_transient_survival(g, 1.0, Configuration::of(4, std::vector<Vertex>{x}), horizon));
    }
    CHECK(std::abs(b.lhs - worst) < 3 * b.lhs_se + 0.01);

    const Graph t20 = random_tree(20, 6);
    const auto full = survival_probability(t20, 2.0, Configuration::full(20), 5.0, 500, 4);
    const auto single = survival_probability(t20, 2.0, Configuration::of(20, std::vector<Vertex>{3}), 5.0, 500, 4);
    CHECK(*full.estimate >= *single.estimate);

    const Calibration cal = calibrate_constants(2.0, 1000, 8);
    const auto floor = survival_floor_check(t20, 2.0, 1.0, cal.constants.c_eps, 400, 9);
    CHECK(floor.verdict == Verdict::Holds);
  }
}
