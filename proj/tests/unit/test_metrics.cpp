#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wsnloc/errors.hpp"
#include "wsnloc/metrics.hpp"
#include "wsnloc/random.hpp"

using namespace wsnloc;

TEST_CASE("ALEs examples") {
  const std::vector<Point> truth{{10, 10}, {20, 30}, {50, 50}};
  CHECK(ales(Placement(truth), truth, 25.0) == 0.0);
  const Placement off{{35, 10}, {20, 5}, {50, 75}};
  CHECK(ales(off, truth, 25.0) == doctest::Approx(100.0));
}

TEST_CASE("ALEs matches a direct evaluation") {
  Rng rng(4);
  std::vector<Point> truth(40);
  Placement guess(40);
  double sum = 0.0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    truth[k] = {rng.uniform(0, 100), rng.uniform(0, 100)};
    guess[k] = {rng.uniform(0, 100), rng.uniform(0, 100)};
    sum += std::sqrt(std::pow(truth[k].x - guess[k].x, 2) + std::pow(truth[k].y - guess[k].y, 2));
  }
  CHECK(ales(guess, truth, 30.0) == doctest::Approx(100.0 * sum / (40 * 30.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ales(Placement(3), truth, 30.0), InvalidArgument);
}

TEST_CASE("APG examples") {
  const std::vector<double> others{30, 20};
  CHECK(apg(others, 10) == doctest::Approx(15.0));
  const std::vector<double> same{42.5};
  CHECK(apg(same, 42.5) == 0.0);
  // DV-Hop ALA 70.19 against 86.11.
  const std::vector<double> dvhop{100.0 - 70.19};
  CHECK(apg(dvhop, 100.0 - 86.11) == doctest::Approx(15.92));
  CHECK_THROWS_AS(apg({}, 1.0), InvalidArgument);
}

TEST_CASE("Student t quantiles against closed forms") {
  // One degree of freedom is Cauchy: t = tan(pi (1/2 - a)).
  for (double a : {0.025, 0.05, 0.1, 0.3}) {
    CHECK(student_t_upper_quantile(a, 1) == doctest::Approx(std::tan(std::numbers::pi * (0.5 - a))).epsilon(1e-10));
  }
  CHECK(student_t_upper_quantile(0.025, 1) == doctest::Approx(12.706).epsilon(1e-4));
  // Two degrees of freedom: t = (2p - 1) / sqrt(2 p (1 - p)) with p = 1 - a.
  for (double a : {0.025, 0.05, 0.2}) {
    const double p = 1.0 - a;
    CHECK(student_t_upper_quantile(a, 2) == doctest::Approx((2 * p - 1) / std::sqrt(2 * p * (1 - p))).epsilon(1e-10));
  }
}

TEST_CASE("confidence interval examples") {
  const std::vector<double> flat(10, 3.5);
  const auto c = confidence_interval(flat);
  CHECK(c.mean == 3.5);
  CHECK(c.lower == 3.5);
  CHECK(c.upper == 3.5);

  const std::vector<double> pair{0.0, 2.0};
  const auto p = confidence_interval(pair);
  const double half = std::tan(std::numbers::pi * 0.475);
  CHECK(p.mean == 1.0);
  CHECK(p.lower == doctest::Approx(1.0 - half).epsilon(1e-10));
  CHECK(p.upper == doctest::Approx(1.0 + half).epsilon(1e-10));

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(confidence_interval(one), InvalidArgument);
}

TEST_CASE("confidence interval coverage of a Gaussian mean") {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> normal(10.0, 3.0);
  int covered = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> s(50);
    for (double& v : s) v = normal(gen);
    const auto ci = confidence_interval(s);
    CHECK(ci.lower <= ci.mean);
    CHECK(ci.mean <= ci.upper);
    if (ci.lower <= 10.0 && 10.0 <= ci.upper) ++covered;
  }
  const double rate = static_cast<double>(covered) / trials;
  INFO("coverage " << rate);
  CHECK(rate >= 0.93);
  CHECK(rate <= 0.97);
}
