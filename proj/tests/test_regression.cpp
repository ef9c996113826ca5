#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "ancillary/empirical.hpp"
#include "ancillary/regression.hpp"
#include "ancillary/rng.hpp"

using namespace ancillary;
using Catch::Approx;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("ancillary_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("csv loading") {
  const auto ok = write_temp("ok.csv", "id,y,z\n1,1.5,2\n2,2.5,3\n3,3.5,4\n");
  const auto d = load_xy_csv(ok, "y", std::string("z"), false);
  CHECK(d.y == std::vector<double>{1.5, 2.5, 3.5});
  CHECK(d.z == std::vector<double>{2, 3, 4});
  const auto only = load_xy_csv(ok, "y", std::nullopt, false);
  CHECK(only.z.empty());
  const auto logged = load_xy_csv(ok, "z", std::nullopt, true);
  CHECK(logged.y[0] == Approx(std::log(2.0)));

  const auto blank = write_temp("blank.csv", "y,z\n1,2\n2,\n3,4\n");
  try {
    (void)load_xy_csv(blank, "y", std::string("z"), false);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  const auto text = write_temp("text.csv", "y,z\n1,2\n2,abc\n3,4\n");
  CHECK_THROWS_WITH(load_xy_csv(text, "y", std::string("z"), false), Catch::Matchers::ContainsSubstring("row 2"));
  const auto zero = write_temp("zero.csv", "y,z\n1,2\n0,3\n3,4\n");
  CHECK_THROWS_WITH(load_xy_csv(zero, "y", std::string("z"), true), Catch::Matchers::ContainsSubstring("positive"));
  CHECK_THROWS_AS(load_xy_csv(ok, "missing", std::nullopt, false), std::runtime_error);
  CHECK_THROWS_AS(load_xy_csv("/nonexistent/file.csv", "y", std::nullopt, false), std::runtime_error);
  const auto short_file = write_temp("short.csv", "y\n1\n2\n");
  CHECK_THROWS_AS(load_xy_csv(short_file, "y", std::nullopt, false), std::runtime_error);
  const auto quoted = write_temp("quoted.csv", "\"y\",\"a,b\"\n\"1\",x\n2,y\n3,z\n");
  CHECK(load_xy_csv(quoted, "y", std::nullopt, false).y.size() == 3);
}

TEST_CASE("exact linear data") {
  const std::vector<double> z{0, 1, 2, 3, 4};
  std::vector<double> y;
  for (double v : z) y.push_back(2.0 + 3.0 * v);
  const auto f = ols_fit(y, z);
  CHECK(f.a == Approx(2.0));
  CHECK(f.b == Approx(3.0));
  CHECK(f.r_squared == Approx(1.0));
  CHECK(f.df == 3);
  for (double e : residuals(f, y, z)) CHECK(e == Approx(0.0).margin(1e-12));
}

TEST_CASE("centered regressor with y = z") {
  const std::vector<double> z{-2, -1, 0, 1, 2};
  const auto f = ols_fit(z, z);
  CHECK(f.a == Approx(0.0).margin(1e-15));
  CHECK(f.b == Approx(1.0));
}

TEST_CASE("coefficients match a normal-equations solve") {
  const std::vector<double> z{1.0, 2.0, 4.0, 5.0, 7.0};
  const std::vector<double> y{2.1, 2.9, 5.2, 5.8, 8.4};
  // [n  Sz ] [a]   [Sy ]
  // [Sz Szz] [b] = [Szy]
  const double n = 5, sz = 19, szz = 1 + 4 + 16 + 25 + 49, sy = 24.4;
  const double szy = 2.1 + 5.8 + 20.8 + 29.0 + 58.8;
  const double det = n * szz - sz * sz;
  const double a = (sy * szz - sz * szy) / det;
  const double b = (n * szy - sz * sy) / det;
  const auto f = ols_fit(y, z);
  CHECK(std::abs(f.a - a) < 1e-9);
  CHECK(std::abs(f.b - b) < 1e-9);
  const auto e = residuals(f, y, z);
  double sse = 0, se = 0, sez = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    sse += e[i] * e[i];
    se += e[i];
    sez += e[i] * z[i];
  }
  CHECK(std::abs(se) < 1e-9);
  CHECK(std::abs(sez) < 1e-9);
  CHECK(f.residual_se == Approx(std::sqrt(sse / 3.0)));
  const double mean_z = sz / n;
  CHECK(f.std_errors[1] == Approx(f.residual_se / std::sqrt(szz - n * mean_z * mean_z)));
  CHECK(f.t_values[1] == Approx(f.b / f.std_errors[1]));
  CHECK(f.r_squared >= 0.0);
  CHECK(f.r_squared <= 1.0);
}

TEST_CASE("shifting y moves only the intercept") {
  RandomStream s(3, {1});
  std::vector<double> z(40), y(40), y2(40);
  for (std::size_t i = 0; i < 40; ++i) {
    z[i] = s.normal();
    y[i] = 1.0 - 0.5 * z[i] + 0.3 * s.normal();
    y2[i] = y[i] + 7.0;
  }
  const auto f = ols_fit(y, z), g = ols_fit(y2, z);
  CHECK(g.a == Approx(f.a + 7.0));
  CHECK(g.b == Approx(f.b));
  CHECK(g.r_squared == Approx(f.r_squared));
  const auto e1 = residuals(f, y, z), e2 = residuals(g, y2, z);
  for (std::size_t i = 0; i < 40; ++i) CHECK(e1[i] == Approx(e2[i]).margin(1e-12));
}

TEST_CASE("regression guards") {
  CHECK_THROWS_AS(ols_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(ols_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
  const RegressionFit f;
  CHECK_THROWS_AS(residuals(f, std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("fixture moments and median") {
  const FixtureParams p;
  CHECK(fixture_variance(p) == Approx(0.073));
  // E X and E X^2 from the closed-form CDF: integrate 1 - F on the right and F on the left
  boost::math::quadrature::exp_sinh<double> integrator;
  const auto upper = [&](double x) { return 1.0 - fixture_cdf(x, p); };
  const auto lower = [&](double x) { return fixture_cdf(-x, p); };
  const double right = integrator.integrate(upper), left = integrator.integrate(lower);
  const double right2 = integrator.integrate([&](double x) { return 2.0 * x * upper(x); });
  const double left2 = integrator.integrate([&](double x) { return 2.0 * x * lower(x); });
  CHECK(right - left == Approx(fixture_mean(p)).margin(1e-9));
  CHECK(right2 + left2 == Approx(0.073).epsilon(1e-8));
  const double med = fixture_median(p);
  CHECK(fixture_cdf(med, p) == Approx(0.5).epsilon(1e-12));
  CHECK(med < -0.01);
  const auto x = make_fixture(200000, 5, p);
  const double sd = sample_sd(x);
  CHECK(std::abs(mean_of(x)) < 4.0 * std::sqrt(0.073 / 200000.0));
  CHECK(sd * sd == Approx(0.073).epsilon(0.03));
  CHECK(sample_median(x) == Approx(med).margin(0.005));
}

TEST_CASE("fixture is deterministic") {
  CHECK(make_fixture(100, 4) == make_fixture(100, 4));
  CHECK(make_fixture(100, 4) != make_fixture(100, 5));
  CHECK_THROWS_AS(make_fixture(9, 1), std::invalid_argument);
}

TEST_CASE("histogram") {
  const std::vector<double> x{0.0, 0.5, 1.0, 1.0, 2.0};
  const auto b = histogram(x, 4);
  REQUIRE(b.size() == 4);
  CHECK(b[0].count == 1);
  CHECK(b[1].count == 1);
  CHECK(b[2].count == 2);
  CHECK(b[3].count == 1);
  CHECK(b.front().lo == 0.0);
  CHECK(b.back().hi == 2.0);
  std::size_t total = 0;
  for (const auto& bin : histogram(make_fixture(500, 1), 20)) total += bin.count;
  CHECK(total == 500);
}

TEST_CASE("residual median analysis") {
  CHECK_THROWS_AS(residual_median_analysis(std::vector<double>(9, 1.0), 0.05), std::invalid_argument);
  // symmetric about zero: mean = median = 0
  std::vector<double> sym;
  for (int i = 1; i <= 30; ++i) {
    sym.push_back(i * 0.1);
    sym.push_back(-i * 0.1);
  }
  const auto r = residual_median_analysis(sym, 0.05);
  CHECK(r.bins.size() == 20);
  CHECK(r.mean == Approx(0.0).margin(1e-12));
  for (const auto& t : r.tests) {
    INFO(t.name);
    REQUIRE(t.p_value);
    CHECK(*t.p_value >= 0.05);
  }
  CHECK(*r.test("T_N^2").statistic == Approx(0.0).margin(1e-20));

  int tn_smaller = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto rep = residual_median_analysis(make_fixture(300, seed), 0.05);
    if (rep.test("T_N^2").p_value && rep.test("T_o^2").p_value &&
        *rep.test("T_N^2").p_value < *rep.test("T_o^2").p_value)
      ++tn_smaller;
  }
  CHECK(tn_smaller > 50);
}

TEST_CASE("resample power study") {
  const auto eps = make_fixture(500, 2);
  const auto a = resample_power_study(eps, 70, 300, 0.05, 8, 1);
  const auto b = resample_power_study(eps, 70, 300, 0.05, 8, 3);
  CHECK(a.t_n_sq == b.t_n_sq);
  CHECK(a.w == b.w);
  CHECK(a.t_o_sq == b.t_o_sq);
  const auto one = resample_power_study(eps, 70, 1, 0.05, 8);
  for (double v : {one.t_n_sq, one.w, one.t_o_sq}) CHECK((v == 0.0 || v == 1.0));
  CHECK_THROWS_AS(resample_power_study(eps, 500, 10, 0.05, 1), std::invalid_argument);
}
