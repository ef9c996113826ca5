#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ancillary/reference.hpp"
#include "ancillary/toy.hpp"

using namespace ancillary;
using Catch::Approx;

TEST_CASE("optimal weight is the root of Cov(a)") {
  CHECK(toy_optimal_weight(1.0, 4.0) == Approx(15.0 / 34.0));
  CHECK(toy_cov(15.0 / 34.0, 1.0, 4.0) == Approx(0.0).margin(1e-15));
  CHECK(toy_optimal_weight(2.0, 2.0) == 0.0);
  // SD at the optimum equals the precision-weighted SD: 16/17
  CHECK(std::pow(toy_sd(15.0 / 34.0, 1.0, 4.0), 2) == Approx(16.0 / 17.0));
}

TEST_CASE("power curve peaks at the grid point nearest a*") {
  const auto grid = linear_grid(-0.01, 0.9, 0.01);
  const auto curve = toy_power_curve(grid, 5.0, 1.0, 4.0, 0.05);
  const auto best = std::max_element(curve.begin(), curve.end(),
                                     [](const auto& a, const auto& b) { return a.power_gain < b.power_gain; });
  CHECK(best->a == Approx(0.44));
  const double sigmas[] = {1.0, 4.0};
  CHECK(toy_power_curve(std::vector<double>{15.0 / 34.0}, 5.0, 1.0, 4.0, 0.05)[0].power ==
        Approx(precision_weighted_power(5.0, sigmas, 0.05)).epsilon(1e-12));
  for (const auto& p : curve) CHECK(p.cov == Approx(0.5 * (1.0 - 16.0) + p.a * 17.0));
  CHECK(curve[1].power_gain == Approx(0.0).margin(1e-15));  // a = 0
}

TEST_CASE("homoscedastic curve is symmetric about zero") {
  const std::vector<double> grid{-0.3, -0.1, 0.0, 0.1, 0.3};
  const auto c = toy_power_curve(grid, 2.0, 1.5, 1.5, 0.05);
  CHECK(c[0].power == Approx(c[4].power));
  CHECK(c[1].power == Approx(c[3].power));
  CHECK(c[2].power >= c[1].power);
}

TEST_CASE("three-observation variances by hand") {
  const auto v = three_obs_variances(1.0, 4.0, 3.0);
  CHECK(v.gamma == Approx(5.0 / 17.0));
  CHECK(v.var_t == Approx(26.0 / 9.0));
  CHECK(v.var_tn == Approx(std::pow(32.0 / 51.0, 2) + 16.0 * std::pow(2.0 / 51.0, 2) + 1.0));
  CHECK(v.var_tn == Approx(1.4183).epsilon(1e-4));
  CHECK(v.var_to == Approx(1.0 / (1.0 + 1.0 / 16.0 + 1.0 / 9.0)));
}

TEST_CASE("three-observation powers") {
  const auto grid = linear_grid(0.0, 5.0, 0.05);
  const auto c = toy_three_obs_powers(grid, 1.0, 4.0, 3.0, 0.05);
  CHECK(c.front().p_t == Approx(0.05));
  CHECK(c.front().p_tn == Approx(0.05));
  CHECK(c.front().p_to == Approx(0.05));
  for (const auto& p : c) {
    CHECK(p.p_to >= p.p_tn);
    CHECK(p.p_tn >= p.p_t);
  }
  const auto at2 = toy_three_obs_powers(std::vector<double>{2.0}, 1.0, 4.0, 3.0, 0.05)[0];
  CHECK(at2.p_to > at2.p_tn);
  CHECK(at2.p_tn > at2.p_t);
  CHECK(at2.p_t == Approx(normal_upper_tail(z_alpha(0.05) - 2.0 / std::sqrt(26.0 / 9.0))));
  const auto eq = toy_three_obs_powers(std::vector<double>{1.0}, 2.0, 2.0, 2.0, 0.05)[0];
  CHECK(eq.p_t == Approx(eq.p_tn));
  CHECK(eq.p_t == Approx(eq.p_to));
}

TEST_CASE("grid and argument checks") {
  CHECK(linear_grid(0.0, 1.0, 0.25).size() == 5);
  CHECK_THROWS_AS(linear_grid(1.0, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(toy_power_curve(std::vector<double>{0.0}, 1.0, 0.0, 1.0, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(three_obs_variances(1.0, -1.0, 1.0), std::invalid_argument);
}
