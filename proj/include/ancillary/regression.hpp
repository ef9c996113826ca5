#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "ancillary/designs.hpp"
#include "ancillary/empirical.hpp"
#include "ancillary/location_tests.hpp"
#include "ancillary/parallel.hpp"
#include "ancillary/reference.hpp"
#include "ancillary/rng.hpp"

namespace ancillary {

// ---------------------------------------------------------------------------
// CSV ingestion.

struct PairedSample {
  std::vector<double> y;
  std::vector<double> z;  // empty when no regressor column was requested
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline double parse_cell(std::string_view cell, std::size_t row, std::string_view column) {
  const auto t = trim(cell);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
    throw std::runtime_error("row " + std::to_string(row) + ", column '" + std::string(column) +
                             "': not a number: '" + std::string(t) + "'");
  return v;
}

}  // namespace detail

/// Reads y (and optionally z) by header name. Rows are counted from 1 for the
/// first data line.
inline PairedSample load_xy_csv(const std::string& path, const std::string& y_col,
                                const std::optional<std::string>& z_col, bool log_transform) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  const auto header = detail::split_csv_line(line);
  auto find_col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (detail::trim(header[i]) == name) return i;
    throw std::runtime_error(path + ": no column named '" + name + "'");
  };
  const std::size_t yi = find_col(y_col);
  const std::size_t zi = z_col ? find_col(*z_col) : 0;

  PairedSample out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    ++row;
    const auto cells = detail::split_csv_line(line);
    auto take = [&](std::size_t idx, const std::string& name) {
      if (idx >= cells.size())
        throw std::runtime_error("row " + std::to_string(row) + ", column '" + name + "': missing cell");
      double v = detail::parse_cell(cells[idx], row, name);
      if (log_transform) {
        if (!(v > 0.0))
          throw std::runtime_error("row " + std::to_string(row) + ", column '" + name +
                                   "': log transform needs a positive value");
        v = std::log(v);
      }
      return v;
    };
    out.y.push_back(take(yi, y_col));
    if (z_col) out.z.push_back(take(zi, *z_col));
  }
  if (out.y.size() < 3) throw std::runtime_error(path + ": need at least 3 data rows");
  return out;
}

// ---------------------------------------------------------------------------
// Simple least squares.

struct RegressionFit {
  double a = 0.0;  // intercept
  double b = 0.0;  // slope
  double residual_se = 0.0;
  double r_squared = 0.0;
  std::array<double, 2> std_errors{};
  std::array<double, 2> t_values{};
  std::size_t df = 0;
};

inline RegressionFit ols_fit(std::span<const double> y, std::span<const double> z) {
  if (y.size() != z.size()) throw std::invalid_argument("y and z differ in length");
  if (y.size() < 3) throw std::invalid_argument("regression needs n >= 3");
  const double n = static_cast<double>(y.size());
  const double ybar = mean_of(y), zbar = mean_of(z);
  double szz = 0.0, szy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dz = z[i] - zbar, dy = y[i] - ybar;
    szz += dz * dz;
    szy += dz * dy;
    syy += dy * dy;
  }
  if (!(szz > 0.0)) throw std::invalid_argument("constant regressor");
  RegressionFit f;
  f.b = szy / szz;
  f.a = ybar - f.b * zbar;
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double e = y[i] - f.a - f.b * z[i];
    sse += e * e;
  }
  f.df = y.size() - 2;
  const double sigma2 = sse / static_cast<double>(f.df);
  f.residual_se = std::sqrt(sigma2);
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  f.std_errors = {std::sqrt(sigma2 * (1.0 / n + zbar * zbar / szz)), std::sqrt(sigma2 / szz)};
  f.t_values = {f.a / f.std_errors[0], f.b / f.std_errors[1]};
  return f;
}

inline Sample residuals(const RegressionFit& fit, std::span<const double> y, std::span<const double> z) {
  if (y.size() != z.size()) throw std::invalid_argument("y and z differ in length");
  Sample e(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) e[i] = y[i] - fit.a - fit.b * z[i];
  return e;
}

// ---------------------------------------------------------------------------
// Synthetic residual fixture: with probability p a centered, scaled lognormal
// c (LN(0, tau^2) - e^{tau^2/2}), otherwise N(0, s^2). Both components have
// mean 0; the constants are chosen so the total variance is `variance`. The
// defaults give resampled T_N^2 powers of roughly 0.5 to 0.65 for n_b in
// 70..90 on fixtures of a few thousand points.

struct FixtureParams {
  double variance = 0.073;
  double lognormal_weight = 0.45;  // p
  double tau = 1.0;                // log-scale SD of the lognormal part
  double lognormal_share = 0.65;   // fraction of the variance from that part

  double lognormal_scale() const {
    const double e = std::exp(tau * tau);
    return std::sqrt(lognormal_share * variance / (lognormal_weight * e * (e - 1.0)));
  }
  double normal_sd() const { return std::sqrt((1.0 - lognormal_share) * variance / (1.0 - lognormal_weight)); }
};

inline double fixture_mean(const FixtureParams&) { return 0.0; }

inline double fixture_variance(const FixtureParams& p) {
  const double e = std::exp(p.tau * p.tau);
  const double c = p.lognormal_scale();
  const double s = p.normal_sd();
  return p.lognormal_weight * c * c * e * (e - 1.0) + (1.0 - p.lognormal_weight) * s * s;
}

inline double fixture_cdf(double x, const FixtureParams& p) {
  const double c = p.lognormal_scale();
  const double shifted = x / c + std::exp(0.5 * p.tau * p.tau);
  const double ln_part = shifted > 0.0 ? normal_cdf(std::log(shifted) / p.tau) : 0.0;
  return p.lognormal_weight * ln_part + (1.0 - p.lognormal_weight) * normal_cdf(x / p.normal_sd());
}

/// Root of F(x) = 1/2 of the mixture CDF.
inline double fixture_median(const FixtureParams& p) {
  const double span = 10.0 * std::sqrt(p.variance);
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve([&](double x) { return fixture_cdf(x, p) - 0.5; }, -span, span,
                                                   tol, iters);
  return 0.5 * (r.first + r.second);
}

inline Sample make_fixture(std::size_t n, std::uint64_t seed, const FixtureParams& p = {}) {
  if (n < 10) throw std::invalid_argument("fixture needs n >= 10");
  RandomStream s(seed, {static_cast<std::uint64_t>(StreamPurpose::fixture), n});
  const double c = p.lognormal_scale();
  const double centre = std::exp(0.5 * p.tau * p.tau);
  const double sd = p.normal_sd();
  Sample x(n);
  for (auto& v : x) {
    const bool skewed = s.uniform() < p.lognormal_weight;
    const double g = s.normal();
    v = skewed ? c * (std::exp(p.tau * g) - centre) : sd * g;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Median analysis of residuals.

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
};

/// Equal-width bins over [min, max]; the maximum falls in the last bin.
inline std::vector<HistogramBin> histogram(std::span<const double> x, std::size_t bins = 20) {
  if (x.empty() || bins == 0) throw std::invalid_argument("histogram needs data and bins");
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  const double lo = *mn, hi = *mx;
  const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 1.0;
  std::vector<HistogramBin> out(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    out[i].lo = lo + static_cast<double>(i) * width;
    out[i].hi = i + 1 == bins ? (hi > lo ? hi : lo + width) : lo + static_cast<double>(i + 1) * width;
  }
  for (double v : x) {
    auto k = static_cast<std::size_t>((v - lo) / width);
    out[std::min(k, bins - 1)].count += 1;
  }
  return out;
}

struct TestResult {
  std::string name;
  std::optional<double> statistic;  // empty when degenerate
  std::optional<double> p_value;
  Degeneracy degeneracy = Degeneracy::none;
};

struct ResidualReport {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  double median = 0.0;
  std::vector<TestResult> tests;  // W (two-sided), T_o^2, T_N^2
  std::vector<HistogramBin> bins;

  const TestResult& test(std::string_view name) const {
    for (const auto& t : tests)
      if (t.name == name) return t;
    throw std::out_of_range("no test named " + std::string(name));
  }
};

namespace detail {

inline TestResult to_result(std::string name, const Evaluation& e) {
  TestResult r;
  r.name = std::move(name);
  r.degeneracy = e.degeneracy;
  if (e.ok()) {
    r.statistic = e.outcome.statistic;
    r.p_value = e.outcome.p_value;
  }
  return r;
}

inline TestResult squared_result(std::string name, const Evaluation& e, double alpha) {
  if (!e.ok()) return to_result(std::move(name), e);
  Evaluation sq;
  sq.outcome = two_sided(e.outcome, alpha);
  return to_result(std::move(name), sq);
}

}  // namespace detail

inline ResidualReport residual_median_analysis(std::span<const double> eps, double alpha) {
  if (eps.size() < 10) throw std::invalid_argument("residual analysis needs n >= 10");
  ResidualReport r;
  r.n = eps.size();
  r.mean = mean_of(eps);
  const double sd = sample_sd(eps);
  r.variance = sd * sd;
  r.median = sample_median(eps);
  r.tests.push_back(detail::to_result("W", evaluate_wilcoxon_signed_rank(eps, WilcoxonSide::two_sided, alpha)));
  r.tests.push_back(detail::squared_result("T_o^2", evaluate_median_test_to(eps, alpha), alpha));
  r.tests.push_back(detail::squared_result("T_N^2", evaluate_median_test_tn(eps, alpha), alpha));
  r.bins = histogram(eps, 20);
  return r;
}

struct ResamplePower {
  std::size_t n_b = 0;
  std::size_t reps = 0;
  double t_o_sq = 0.0;
  double w = 0.0;
  double t_n_sq = 0.0;
  std::size_t degenerate_t_n = 0;
};

/// Draws reps samples of size n_b with replacement from eps; resample r uses
/// the stream path (n_b, r), so the result is independent of threads.
inline ResamplePower resample_power_study(std::span<const double> eps, std::size_t n_b, std::size_t reps,
                                          double alpha, std::uint64_t seed, std::size_t threads = 1) {
  if (n_b >= eps.size()) throw std::invalid_argument("n_b must be smaller than the sample size");
  if (n_b < 10) throw std::invalid_argument("n_b must be at least 10");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  std::vector<std::array<std::uint8_t, 4>> hits(reps);
  parallel_chunks(reps, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> x(n_b);
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream s(seed, {static_cast<std::uint64_t>(StreamPurpose::resample), n_b, r});
      for (auto& v : x) v = eps[s.index(eps.size())];
      auto& h = hits[r];
      const auto w = evaluate_wilcoxon_signed_rank(x, WilcoxonSide::two_sided, alpha);
      h[1] = w.ok() && w.outcome.reject;
      const auto summary = try_location_summary(x);
      if (!summary) {
        h[3] = 1;
        continue;
      }
      const auto to = evaluate_median_test_to(*summary, alpha);
      h[0] = to.ok() && two_sided(to.outcome, alpha).reject;
      const auto tn = evaluate_median_test_tn(*summary, alpha);
      h[2] = tn.ok() && two_sided(tn.outcome, alpha).reject;
      h[3] = !tn.ok();
    }
  });
  ResamplePower p;
  p.n_b = n_b;
  p.reps = reps;
  std::array<std::size_t, 4> c{};
  for (const auto& h : hits)
    for (std::size_t k = 0; k < 4; ++k) c[k] += h[k];
  const double d = static_cast<double>(reps);
  p.t_o_sq = static_cast<double>(c[0]) / d;
  p.w = static_cast<double>(c[1]) / d;
  p.t_n_sq = static_cast<double>(c[2]) / d;
  p.degenerate_t_n = c[3];
  return p;
}

}  // namespace ancillary
