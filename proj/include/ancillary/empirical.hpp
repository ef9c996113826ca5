#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ancillary/reference.hpp"

namespace ancillary {

/// Which reading of the squared-deviation variance estimator to use. `paper`
/// subtracts the fourth power of the scale inside the square, `corrected` the
/// second power.
enum class MomentVariant { paper, corrected };

inline std::string_view to_string(MomentVariant v) { return v == MomentVariant::paper ? "paper" : "corrected"; }

inline MomentVariant parse_moment_variant(std::string_view s) {
  if (s == "paper") return MomentVariant::paper;
  if (s == "corrected") return MomentVariant::corrected;
  throw std::invalid_argument("moment variant must be 'paper' or 'corrected'");
}

inline double mean_of(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Type-7 quantile of an already sorted sample: h = (n-1)p, linear
/// interpolation between the order statistics around h.
inline double quantile_type7_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile probability must lie in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile_type7(std::span<const double> x, double p) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return quantile_type7_sorted(s, p);
}

inline double median_sorted(std::span<const double> sorted) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

/// Middle order statistic for odd n, midpoint of the central pair for even n.
inline double sample_median(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return median_sorted(s);
}

/// Sample SD with divisor n - 1.
inline double sample_sd(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("sample SD needs n >= 2");
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// nrd0 from an already sorted sample and its SD.
inline double bandwidth_nrd0_sorted(std::span<const double> sorted, double sd) {
  if (sorted.size() < 2) throw std::invalid_argument("bandwidth needs n >= 2");
  const double iqr = quantile_type7_sorted(sorted, 0.75) - quantile_type7_sorted(sorted, 0.25);
  double scale = std::min(sd, iqr / 1.34);
  if (!(scale > 0.0)) scale = sd;
  if (!(scale > 0.0)) throw std::invalid_argument("bandwidth undefined for a constant sample");
  return 0.9 * scale * std::pow(static_cast<double>(sorted.size()), -0.2);
}

/// Silverman's rule as in R's bw.nrd0: 0.9 min(sd, IQR/1.34) n^(-1/5), with
/// sd substituted when the IQR vanishes.
inline double bandwidth_nrd0(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  return bandwidth_nrd0_sorted(s, sample_sd(x));
}

/// Gaussian kernel density estimate at one point.
inline double kde_at(std::span<const double> x, double point, double bandwidth) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  if (x.empty()) throw std::invalid_argument("empty sample");
  double acc = 0.0;
  for (double v : x) {
    const double u = (point - v) / bandwidth;
    acc += std::exp(-0.5 * u * u);
  }
  return acc / (static_cast<double>(x.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
}

struct SampleMoments {
  std::size_t n = 0;
  double mean = 0.0;
  double s2 = 0.0;        // divisor n - 1
  double mu3_hat = 0.0;   // divisor n
  double median = 0.0;
  double w_hat = 0.0;     // mean |X_i - median|
  double var_sq_hat = 0.0;
};

/// n^-1 sum {(X_i - mean)^2 - r}^2 where r is scale^4 (paper) or scale^2
/// (corrected).
inline double squared_deviation_dispersion(std::span<const double> x, double mean, double scale, MomentVariant v) {
  const double s2 = scale * scale;
  const double ref = v == MomentVariant::paper ? s2 * s2 : s2;
  double acc = 0.0;
  for (double xi : x) {
    const double d = (xi - mean) * (xi - mean) - ref;
    acc += d * d;
  }
  return acc / static_cast<double>(x.size());
}

/// Moment estimators. `var_sq_hat` uses the known sigma when given and the
/// sample SD otherwise.
inline SampleMoments sample_moments(std::span<const double> x, std::optional<double> sigma_known = std::nullopt,
                                    MomentVariant variant = MomentVariant::paper) {
  if (x.size() < 2) throw std::invalid_argument("sample moments need n >= 2");
  SampleMoments m;
  m.n = x.size();
  const double nd = static_cast<double>(m.n);
  m.mean = mean_of(x);
  double ss = 0.0, s3 = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    ss += d * d;
    s3 += d * d * d;
  }
  m.s2 = ss / (nd - 1.0);
  m.mu3_hat = s3 / nd;
  m.median = sample_median(x);
  double abs_dev = 0.0;
  for (double v : x) abs_dev += std::abs(v - m.median);
  m.w_hat = abs_dev / nd;
  m.var_sq_hat = squared_deviation_dispersion(x, m.mean, sigma_known.value_or(std::sqrt(m.s2)), variant);
  return m;
}

/// Location summary shared by the median and symmetry tests: median, mean,
/// S, w_hat and the KDE at the median with the nrd0 bandwidth.
struct LocationSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double s = 0.0;
  double median = 0.0;
  double w_hat = 0.0;
  double bandwidth = 0.0;
  double f_hat = 0.0;
};

/// Returns nullopt when the sample is constant (no bandwidth).
inline std::optional<LocationSummary> try_location_summary(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("location summary needs n >= 2");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  LocationSummary r;
  r.n = x.size();
  const double nd = static_cast<double>(r.n);
  r.mean = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.s = std::sqrt(ss / (nd - 1.0));
  r.median = median_sorted(sorted);
  double abs_dev = 0.0;
  for (double v : x) abs_dev += std::abs(v - r.median);
  r.w_hat = abs_dev / nd;
  if (!(r.s > 0.0)) return std::nullopt;
  r.bandwidth = bandwidth_nrd0_sorted(sorted, r.s);
  r.f_hat = kde_at(x, r.median, r.bandwidth);
  return r;
}

}  // namespace ancillary
