#include "exf/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace exf {

CorrelationEstimate pearson_correlation_ci(std::span<const double> x, std::span<const double> y,
                                           double level) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation inputs differ in length");
  if (x.size() < 4) throw std::invalid_argument("correlation needs at least 4 pairs");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");

  const std::size_t n = x.size();
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("correlation undefined for constant input");

  CorrelationEstimate e;
  e.n = n;
  e.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (std::abs(e.r) == 1.0) {
    e.lower = e.upper = e.r;
    return e;
  }
  const boost::math::normal standard;
  const double q = boost::math::quantile(standard, 0.5 + level / 2.0);
  const double z = std::atanh(e.r);
  const double se = 1.0 / std::sqrt(static_cast<double>(n) - 3.0);
  e.lower = std::tanh(z - q * se);
  e.upper = std::tanh(z + q * se);
  e.half_width = (e.upper - e.lower) / 2.0;
  return e;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

CorrelationEstimate spearman_correlation_ci(std::span<const double> x, std::span<const double> y,
                                            double level) {
  if (x.size() != y.size()) throw std::invalid_argument("correlation inputs differ in length");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson_correlation_ci(rx, ry, level);
}

double display_half_width(const CorrelationEstimate& e) {
  return std::round(e.half_width * 100.0) / 100.0;
}

}  // namespace exf
