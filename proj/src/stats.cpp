#include "atype/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace atype {

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double variance(std::span<const double> xs, double m) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / (static_cast<double>(xs.size()) - 1.0);
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

double quantile(std::span<const double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

TestResult mann_whitney_greater(std::span<const double> a,
                                std::span<const double> b) {
  const size_t na = a.size(), nb = b.size();
  if (na == 0 || nb == 0)
    throw std::invalid_argument("mann_whitney_greater: empty sample");

  struct Tagged {
    double value;
    bool from_a;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(na + nb);
  for (double x : a) pooled.push_back({x, true});
  for (double x : b) pooled.push_back({x, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Tagged& l, const Tagged& r) { return l.value < r.value; });

  // Average ranks over tie groups; accumulate tie correction term.
  const double n = static_cast<double>(na + nb);
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  size_t i = 0;
  while (i < pooled.size()) {
    size_t j = i;
    while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
    const double t = static_cast<double>(j - i);
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (size_t k = i; k < j; ++k)
      if (pooled[k].from_a) rank_sum_a += avg_rank;
    tie_term += t * t * t - t;
    i = j;
  }

  const double ua =
      rank_sum_a - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;
  const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                     ((n + 1.0) - tie_term / (n * (n - 1.0)));
  TestResult result;
  result.statistic = ua;
  if (var <= 0.0) {
    result.p_value = 1.0;  // all values identical: no evidence either way
    return result;
  }
  const double z = (ua - mu - 0.5) / std::sqrt(var);
  result.p_value = normal_sf(z);
  return result;
}

TestResult welch_t_greater(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_greater: need >= 2 values per sample");
  const double ma = mean(a), mb = mean(b);
  const double va = variance(a, ma), vb = variance(b, mb);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;

  TestResult result;
  if (se2 <= 0.0) {
    // Degenerate samples: decide by the means alone.
    result.statistic = ma > mb ? HUGE_VAL : (ma < mb ? -HUGE_VAL : 0.0);
    result.p_value = ma > mb ? 0.0 : 1.0;
    return result;
  }
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 /
                    (va * va / (na * na * (na - 1.0)) +
                     vb * vb / (nb * nb * (nb - 1.0)));
  boost::math::students_t dist(df);
  result.statistic = t;
  result.p_value = boost::math::cdf(boost::math::complement(dist, t));
  return result;
}

}  // namespace atype
