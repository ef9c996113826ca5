#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "ancillary/designs.hpp"
#include "ancillary/empirical.hpp"
#include "ancillary/rng.hpp"

using namespace ancillary;
using Catch::Approx;

TEST_CASE("design labels") {
  const auto d = DesignId::parse("t1:D13");
  CHECK(d.table() == DesignTable::table1);
  CHECK(d.hypothesis() == 1);
  CHECK(d.index() == 3);
  CHECK(d.label() == "t1:D13");
  CHECK(d.matched_null() == DesignId::parse("t1:D03"));
  CHECK(DesignId::parse("toy:D12").label() == "toy:D12");
  CHECK_THROWS_AS(DesignId::parse("t2:D13"), std::invalid_argument);
  CHECK_THROWS_AS(DesignId::parse("t1:D05"), std::invalid_argument);
  CHECK_THROWS_AS(DesignId::parse("t1:D21"), std::invalid_argument);
  CHECK_THROWS_AS(DesignId::parse("t4:D01"), std::invalid_argument);
  CHECK_THROWS_AS(DesignId::parse("D01"), std::invalid_argument);
}

TEST_CASE("registry lists every design once with a distinct key") {
  const auto all = list_designs();
  CHECK(all.size() == 8 + 4 + 8 + 4);
  std::vector<std::uint64_t> keys;
  for (const auto& e : all) {
    keys.push_back(e.id.key());
    CHECK_FALSE(e.description.empty());
  }
  std::sort(keys.begin(), keys.end());
  CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  CHECK(all.front().id.label() == "t1:D01");
  CHECK(all[1].id.label() == "t1:D11");
}

TEST_CASE("alternative samples are shifted null samples on the same stream") {
  for (auto [table, m, shift] : {std::tuple{DesignTable::table1, 1, 0.1}, std::tuple{DesignTable::table1, 4, 0.2},
                                 std::tuple{DesignTable::table3, 2, 0.1}, std::tuple{DesignTable::table3, 4, 0.1}}) {
    RandomStream a(1, {2}), b(1, {2});
    const auto x0 = sample_design(DesignId(table, 0, m), 50, a);
    const auto x1 = sample_design(DesignId(table, 1, m), 50, b);
    for (std::size_t i = 0; i < 50; ++i) CHECK(x1[i] - x0[i] == Approx(shift));
  }
}

TEST_CASE("sampled moments agree with the closed forms") {
  constexpr std::size_t n = 400000;
  const double rn = std::sqrt(static_cast<double>(n));
  for (const auto& entry : list_designs()) {
    if (entry.id.table() == DesignTable::toy) continue;
    INFO(entry.id.label());
    const auto p = design_params(entry.id);
    RandomStream s(17, {entry.id.key()});
    auto x = sample_design(entry.id, n, s);
    const double mean = mean_of(x);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
      const double d = v - mean;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double s2 = p.sigma * p.sigma;
    CHECK(std::abs(mean - p.mean) < 4.0 * p.sigma / rn);
    CHECK(std::abs(m2 - s2) < 4.0 * std::sqrt(p.mu4 - s2 * s2) / rn);
    // higher sample moments of the lognormal design are too noisy; checked by
    // quadrature below
    if (entry.id.label() != "t2:D12") {
      CHECK(m3 == Approx(p.mu3).margin(0.05 * std::pow(p.sigma, 3)).epsilon(0.1));
      CHECK(m4 == Approx(p.mu4).epsilon(0.1));
    }
    std::sort(x.begin(), x.end());
    const double med = median_sorted(x);
    CHECK(std::abs(med - p.median) < 4.0 / (2.0 * p.density_at_median * rn));
    double mad = 0.0;
    for (double v : x) mad += std::abs(v - p.median);
    mad /= n;
    CHECK(std::abs(mad - p.mean_abs_dev_about_median) < 4.0 * p.sigma * 2.0 / rn);
    // density at the median from the empirical mass of a small window
    const double h = 0.02 * p.sigma;
    const auto lo = std::lower_bound(x.begin(), x.end(), p.median - h);
    const auto hi = std::upper_bound(x.begin(), x.end(), p.median + h);
    const double dens = static_cast<double>(hi - lo) / (n * 2.0 * h);
    CHECK(dens == Approx(p.density_at_median).epsilon(0.05));
  }
}

TEST_CASE("Weibull family is centered with unit variance") {
  const auto p = design_params(DesignId(DesignTable::table1, 0, 4));
  CHECK(p.mean == 0.0);
  CHECK(p.sigma == Approx(1.0));
}

TEST_CASE("toy designs have a fixed dimension") {
  RandomStream s(1, {1});
  CHECK(sample_design(DesignId(DesignTable::toy, 0, 1), 2, s).size() == 2);
  CHECK(sample_design(DesignId(DesignTable::toy, 1, 2), 3, s).size() == 3);
  CHECK_THROWS_AS(sample_design(DesignId(DesignTable::toy, 0, 1), 3, s), std::invalid_argument);
  CHECK_THROWS_AS(sample_design(DesignId(DesignTable::table1, 0, 1), 1, s), std::invalid_argument);
}

TEST_CASE("negative lognormal moments by quadrature") {
  // X = e^{1/2} - e^Z, Z ~ N(0, 1)
  const auto p = design_params(DesignId(DesignTable::table2, 1, 2));
  auto moment = [](auto&& g) {
    double acc = 0.0;
    const double h = 1e-4;
    for (double z = -14.0; z < 14.0; z += h) acc += g(std::exp(0.5) - std::exp(z)) * std::exp(-0.5 * z * z) * h;
    return acc / std::sqrt(2.0 * std::numbers::pi);
  };
  CHECK(moment([](double x) { return x; }) == Approx(0.0).margin(1e-8));
  CHECK(moment([](double x) { return x * x; }) == Approx(p.sigma * p.sigma).epsilon(1e-8));
  CHECK(moment([](double x) { return x * x * x; }) == Approx(p.mu3).epsilon(1e-7));
  CHECK(moment([](double x) { return x * x * x * x; }) == Approx(p.mu4).epsilon(1e-6));
  CHECK(moment([&](double x) { return std::abs(x - p.median); }) == Approx(p.mean_abs_dev_about_median).epsilon(1e-7));
  CHECK(p.median == Approx(std::exp(0.5) - 1.0));
}
