#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

namespace ancillary {

// Reference distributions used for asymptotic thresholds and p-values.

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_upper_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal quantile needs 0 < p < 1");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

/// z_alpha with Pr(Z > z_alpha) = alpha.
inline double z_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  return -normal_quantile(alpha);
}

/// chi2_1(alpha) with Pr(chi2_1 > c) = alpha; equals z_{alpha/2}^2.
inline double chi2_1_alpha(double alpha) {
  const double z = z_alpha(alpha / 2.0);
  return z * z;
}

inline double chi2_1_upper_tail(double x) {
  if (x <= 0.0) return 1.0;
  return std::erfc(std::sqrt(0.5 * x));
}

}  // namespace ancillary
