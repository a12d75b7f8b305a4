#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace exf {

struct CorrelationEstimate {
  double r = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double half_width = 0.0;  // (upper - lower) / 2
  std::size_t n = 0;
};

/**
 * Pearson product-moment correlation with a Fisher-z confidence interval:
 * z = atanh(r), standard error 1/sqrt(n - 3), two-sided normal quantile,
 * mapped back through tanh. |r| = 1 yields the degenerate interval [r, r].
 *
 * Throws std::invalid_argument on length mismatch, n < 4 or a level outside
 * (0, 1); std::domain_error when either input is constant.
 */
CorrelationEstimate pearson_correlation_ci(std::span<const double> x, std::span<const double> y,
                                           double level = 0.95);

/// Pearson on average-tie ranks, same interval construction.
CorrelationEstimate spearman_correlation_ci(std::span<const double> x, std::span<const double> y,
                                            double level = 0.95);

/// 1-based ranks; ties share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Symmetric "±" display value: half_width rounded to two decimals.
double display_half_width(const CorrelationEstimate& e);

}  // namespace exf
