#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "atype/stats.hpp"

using namespace atype;

// Expected p-values frozen from an independent implementation of the
// same procedures (asymptotic rank-sum with tie correction and
// continuity correction; Welch with Satterthwaite df).

TEST_CASE("mean, median, quantile") {
  const std::vector<double> xs{4.0, 1.0, 3.0, 2.0};
  CHECK(mean(xs) == doctest::Approx(2.5));
  CHECK(median(xs) == doctest::Approx(2.5));
  CHECK(quantile(xs, 0.0) == doctest::Approx(1.0));
  CHECK(quantile(xs, 1.0) == doctest::Approx(4.0));
  CHECK(quantile(xs, 0.25) == doctest::Approx(1.75));
  const std::vector<double> one{7.0};
  CHECK(median(one) == doctest::Approx(7.0));
  CHECK_THROWS_AS(mean(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("rank-sum test against frozen values") {
  const std::vector<double> a{3, 4, 2, 6, 2, 5};
  const std::vector<double> b{9, 7, 5, 10, 6, 8};

  const TestResult greater = mann_whitney_greater(a, b);
  CHECK(greater.statistic == doctest::Approx(2.0));
  CHECK(greater.p_value == doctest::Approx(0.9960472777).epsilon(1e-6));

  const TestResult reversed = mann_whitney_greater(b, a);
  CHECK(reversed.statistic == doctest::Approx(34.0));
  CHECK(reversed.p_value == doctest::Approx(0.0062959557).epsilon(1e-6));

  const std::vector<double> lo{1, 2, 3, 4, 5};
  const std::vector<double> hi{6, 7, 8, 9, 10};
  const TestResult separated = mann_whitney_greater(hi, lo);
  CHECK(separated.statistic == doctest::Approx(25.0));
  CHECK(separated.p_value == doctest::Approx(0.0060928902).epsilon(1e-6));

  // Heavy ties, the shape censored iteration counts take.
  const std::vector<double> ca{5, 21, 21, 21, 21};
  const std::vector<double> cb{3, 4, 21, 21, 21};
  const TestResult censored = mann_whitney_greater(ca, cb);
  CHECK(censored.statistic == doctest::Approx(16.0));
  CHECK(censored.p_value == doctest::Approx(0.2203430082).epsilon(1e-6));

  // All values identical: no evidence.
  const std::vector<double> flat{2, 2, 2};
  CHECK(mann_whitney_greater(flat, flat).p_value == doctest::Approx(1.0));
}

TEST_CASE("Welch test against frozen values") {
  const std::vector<double> a{19.8, 20.4, 19.6, 17.8, 18.5,
                              18.9, 18.3, 18.9, 19.5, 22.0};
  const std::vector<double> b{28.2, 26.6, 20.1, 23.3, 25.2, 22.1, 17.7,
                              27.6, 20.6, 13.7, 23.2, 17.5, 20.6, 18.0,
                              23.9, 21.6, 24.3, 20.4, 23.9, 13.3};
  const TestResult greater = welch_t_greater(b, a);
  CHECK(greater.statistic == doctest::Approx(2.2255120400).epsilon(1e-8));
  CHECK(greater.p_value == doctest::Approx(0.0177422654).epsilon(1e-6));

  const TestResult reversed = welch_t_greater(a, b);
  CHECK(reversed.statistic == doctest::Approx(-2.2255120400).epsilon(1e-8));
  CHECK(reversed.p_value == doctest::Approx(0.9822577346).epsilon(1e-6));

  const std::vector<double> flat{3, 3, 3};
  const std::vector<double> flat_lower{1, 1, 1};
  CHECK(welch_t_greater(flat, flat_lower).p_value == doctest::Approx(0.0));
  CHECK(welch_t_greater(flat_lower, flat).p_value == doctest::Approx(1.0));
}
