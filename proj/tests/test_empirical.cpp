#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "ancillary/empirical.hpp"
#include "ancillary/rng.hpp"

using namespace ancillary;
using Catch::Approx;

TEST_CASE("type-7 quantiles by hand") {
  const std::vector<double> x{4.0, 1.0, 3.0, 2.0};
  CHECK(quantile_type7(x, 0.25) == Approx(1.75));
  CHECK(quantile_type7(x, 0.5) == Approx(2.5));
  CHECK(quantile_type7(x, 0.0) == 1.0);
  CHECK(quantile_type7(x, 1.0) == 4.0);
  CHECK(quantile_type7(x, 0.9) == Approx(3.7));
  CHECK_THROWS_AS(quantile_type7(x, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(quantile_type7(std::vector<double>{}, 0.5), std::invalid_argument);
}

TEST_CASE("quantiles are monotone in p") {
  RandomStream s(3, {1});
  std::vector<double> x(101);
  for (auto& v : x) v = s.normal();
  double prev = -1e300;
  for (int i = 0; i <= 100; ++i) {
    const double q = quantile_type7(x, i / 100.0);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("medians") {
  CHECK(sample_median(std::vector<double>{3.0, 1.0, 2.0}) == 2.0);
  CHECK(sample_median(std::vector<double>{4.0, 1.0, 3.0, 2.0}) == 2.5);
}

TEST_CASE("moments of {0, 1, 2, 3}") {
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const auto m = sample_moments(x);
  CHECK(m.mean == Approx(1.5));
  CHECK(m.s2 == Approx(5.0 / 3.0));
  CHECK(m.mu3_hat == Approx(0.0).margin(1e-15));
  CHECK(m.median == Approx(1.5));
  CHECK(m.w_hat == Approx(1.0));
  const double s4 = 25.0 / 9.0;
  const double paper = (2 * std::pow(2.25 - s4, 2) + 2 * std::pow(0.25 - s4, 2)) / 4.0;
  CHECK(m.var_sq_hat == Approx(paper));
  const auto c = sample_moments(x, std::nullopt, MomentVariant::corrected);
  const double s2 = 5.0 / 3.0;
  CHECK(c.var_sq_hat == Approx((2 * std::pow(2.25 - s2, 2) + 2 * std::pow(0.25 - s2, 2)) / 4.0));
  const auto k = sample_moments(x, 1.0);
  CHECK(k.var_sq_hat == Approx((2 * std::pow(1.25, 2) + 2 * std::pow(0.75, 2)) / 4.0));
}

TEST_CASE("moment variant parsing") {
  CHECK(parse_moment_variant("paper") == MomentVariant::paper);
  CHECK(parse_moment_variant("corrected") == MomentVariant::corrected);
  CHECK_THROWS_AS(parse_moment_variant("other"), std::invalid_argument);
  CHECK(to_string(MomentVariant::corrected) == "corrected");
}

TEST_CASE("nrd0 bandwidth by hand") {
  // 1..5: sd 1.5811, IQR 2 -> 0.9 * (2 / 1.34) * 5^-0.2
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(bandwidth_nrd0(x) == Approx(0.9 * (2.0 / 1.34) * std::pow(5.0, -0.2)));
  CHECK(bandwidth_nrd0(x) == Approx(0.9736).epsilon(1e-4));
  // zero IQR falls back to the SD
  const std::vector<double> z{0, 0, 0, 0, 0, 0, 0, 1};
  CHECK(bandwidth_nrd0(z) == Approx(0.9 * sample_sd(z) * std::pow(8.0, -0.2)));
  CHECK_THROWS_AS(bandwidth_nrd0(std::vector<double>{2, 2, 2}), std::invalid_argument);
}

TEST_CASE("kde at a point") {
  const std::vector<double> one{0.0};
  CHECK(kde_at(one, 0.0, 1.0) == Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  const std::vector<double> two{-1.0, 1.0};
  const double expect = 0.5 * (std::exp(-0.5 / 0.25) + std::exp(-0.5 / 0.25)) / (0.5 * std::sqrt(2.0 * std::numbers::pi));
  CHECK(kde_at(two, 0.0, 0.5) == Approx(expect));
  CHECK_THROWS_AS(kde_at(two, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("kde integrates to one") {
  RandomStream s(5, {2});
  std::vector<double> x(50);
  for (auto& v : x) v = s.exponential();
  const double h = bandwidth_nrd0(x);
  double total = 0.0;
  const double step = 0.01;
  for (double t = -10.0; t < 20.0; t += step) total += kde_at(x, t, h) * step;
  CHECK(total == Approx(1.0).epsilon(1e-4));
}

TEST_CASE("location summary") {
  CHECK_FALSE(try_location_summary(std::vector<double>{1, 1, 1, 1}).has_value());
  const std::vector<double> x{-2.0, -0.5, 0.1, 0.7, 3.0};
  const auto s = try_location_summary(x);
  REQUIRE(s);
  CHECK(s->median == 0.1);
  CHECK(s->mean == Approx(0.26));
  CHECK(s->s == Approx(sample_sd(x)));
  CHECK(s->w_hat == Approx((2.1 + 0.6 + 0.0 + 0.6 + 2.9) / 5.0));
  CHECK(s->bandwidth == Approx(bandwidth_nrd0(x)));
  CHECK(s->f_hat == Approx(kde_at(x, 0.1, s->bandwidth)));
}
