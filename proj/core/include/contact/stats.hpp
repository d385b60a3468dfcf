#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace contact::stats {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0;
  double high = 0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

struct MeanSe {
  double mean = 0;
  double se = 0;  // standard error of the mean (sample sd / sqrt(n))
  std::size_t n = 0;
};

/// Sample mean and its standard error, accumulated in the given order.
MeanSe mean_se(std::span<const double> xs);

/// sup |F_n(x) - (1 - e^{-x})| for samples already divided by their mean.
double ks_distance_exp1(std::vector<double> xs);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double slope_se = 0;
  Interval slope_ci;  // two-sided Student-t interval at the requested level
  std::size_t points = 0;
};

/// Ordinary least squares y = a + b x with a t-based interval for b; needs >= 3 points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y, double level = 0.95);

/// Empirical quantile with linear interpolation between order statistics.
double quantile(std::vector<double> xs, double q);

}  // namespace contact::stats
