#include "contact/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "contact/error.hpp"

namespace contact::stats {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

MeanSe mean_se(std::span<const double> xs) {
  MeanSe out;
  double mean = 0, m2 = 0;
  for (double x : xs) {
    ++out.n;
    const double d = x - mean;
    mean += d / static_cast<double>(out.n);
    m2 += d * (x - mean);
  }
  out.mean = mean;
  if (out.n > 1) out.se = std::sqrt(m2 / static_cast<double>(out.n - 1) / static_cast<double>(out.n));
  return out;
}

double ks_distance_exp1(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = -std::expm1(-std::max(0.0, xs[i]));
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y, double level) {
  if (x.size() != y.size()) throw InvalidArgument("linear_fit: x and y differ in length");
  if (x.size() < 3) throw InvalidArgument("linear_fit: need at least 3 points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw InvalidArgument("linear_fit: x values are all equal");
  LinearFit fit;
  fit.points = x.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss += r * r;
  }
  fit.slope_se = std::sqrt(rss / (n - 2) / sxx);
  const boost::math::students_t dist(n - 2);
  const double tq = boost::math::quantile(dist, 0.5 + level / 2);
  fit.slope_ci = {fit.slope - tq * fit.slope_se, fit.slope + tq * fit.slope_se};
  return fit;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw InvalidArgument("quantile of an empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

}  // namespace contact::stats
