#pragma once

#include <span>
#include <vector>

namespace atype {

double mean(std::span<const double> xs);
double median(std::span<const double> xs);
/// Linear-interpolated quantile, q in [0, 1].
double quantile(std::span<const double> xs, double q);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// One-sided Mann-Whitney U (normal approximation, tie-corrected, with
/// continuity correction) for the alternative "a tends greater than b".
/// Returns U for sample a. Ties carry average ranks, so censored values
/// mapped to one shared sentinel rank worst together.
TestResult mann_whitney_greater(std::span<const double> a,
                                std::span<const double> b);

/// One-sided Welch t-test for the alternative "mean(a) > mean(b)".
TestResult welch_t_greater(std::span<const double> a,
                           std::span<const double> b);

}  // namespace atype
