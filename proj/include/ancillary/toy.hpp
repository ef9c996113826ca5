#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ancillary/reference.hpp"

namespace ancillary {

// Closed-form powers of linear statistics of independent normal observations
// with a common mean mu: a statistic sum c_i X_i with sum c_i = 1 has mean mu
// and known SD, so its level-alpha power is 1 - Phi(z_alpha - mu / sd).

inline double normal_linear_power(double mu, double sd, double alpha) {
  if (!(sd > 0.0)) throw std::invalid_argument("statistic SD must be positive");
  return normal_upper_tail(z_alpha(alpha) - mu / sd);
}

struct ToyCurvePoint {
  double a = 0.0;
  double power = 0.0;       // P(a)
  double power_gain = 0.0;  // P(a) - P(0)
  double cov = 0.0;         // Cov(T + a(X1 - X2), X1 - X2)
};

/// T = (X1 + X2) / 2 adjusted by a (X1 - X2); X_i ~ N(mu1, sigma_i^2) under H1.
inline double toy_sd(double a, double sigma1, double sigma2) {
  const double c1 = 0.5 + a, c2 = 0.5 - a;
  return std::sqrt(c1 * c1 * sigma1 * sigma1 + c2 * c2 * sigma2 * sigma2);
}

inline double toy_cov(double a, double sigma1, double sigma2) {
  const double s1 = sigma1 * sigma1, s2 = sigma2 * sigma2;
  return 0.5 * (s1 - s2) + a * (s1 + s2);
}

/// Root of Cov(a) = 0, which minimizes the SD and hence maximizes P(a).
inline double toy_optimal_weight(double sigma1, double sigma2) {
  const double s1 = sigma1 * sigma1, s2 = sigma2 * sigma2;
  return 0.5 * (s2 - s1) / (s1 + s2);
}

inline std::vector<ToyCurvePoint> toy_power_curve(std::span<const double> a_grid, double mu1, double sigma1,
                                                  double sigma2, double alpha) {
  if (!(sigma1 > 0.0 && sigma2 > 0.0)) throw std::invalid_argument("sigmas must be positive");
  const double p0 = normal_linear_power(mu1, toy_sd(0.0, sigma1, sigma2), alpha);
  std::vector<ToyCurvePoint> out;
  out.reserve(a_grid.size());
  for (double a : a_grid) {
    ToyCurvePoint p;
    p.a = a;
    p.power = normal_linear_power(mu1, toy_sd(a, sigma1, sigma2), alpha);
    p.power_gain = p.power - p0;
    p.cov = toy_cov(a, sigma1, sigma2);
    out.push_back(p);
  }
  return out;
}

/// Power of the precision-weighted mean, the most powerful statistic here.
inline double precision_weighted_power(double mu, std::span<const double> sigmas, double alpha) {
  double precision = 0.0;
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("sigmas must be positive");
    precision += 1.0 / (s * s);
  }
  return normal_linear_power(mu, std::sqrt(1.0 / precision), alpha);
}

struct ThreeObsVariances {
  double gamma = 0.0;
  double var_t = 0.0;   // plain mean
  double var_tn = 0.0;  // mean + gamma (X1 - X2)
  double var_to = 0.0;  // precision-weighted mean
};

inline ThreeObsVariances three_obs_variances(double sigma1, double sigma2, double sigma3) {
  if (!(sigma1 > 0.0 && sigma2 > 0.0 && sigma3 > 0.0)) throw std::invalid_argument("sigmas must be positive");
  const double s1 = sigma1 * sigma1, s2 = sigma2 * sigma2, s3 = sigma3 * sigma3;
  ThreeObsVariances v;
  v.gamma = (s2 - s1) / (3.0 * (s2 + s1));
  v.var_t = (s1 + s2 + s3) / 9.0;
  const double c1 = 1.0 / 3.0 + v.gamma, c2 = 1.0 / 3.0 - v.gamma;
  v.var_tn = c1 * c1 * s1 + c2 * c2 * s2 + s3 / 9.0;
  v.var_to = 1.0 / (1.0 / s1 + 1.0 / s2 + 1.0 / s3);
  return v;
}

struct ThreeObsPoint {
  double mu = 0.0;
  double p_t = 0.0;
  double p_tn = 0.0;
  double p_to = 0.0;
};

inline std::vector<ThreeObsPoint> toy_three_obs_powers(std::span<const double> mu_grid, double sigma1, double sigma2,
                                                       double sigma3, double alpha) {
  const auto v = three_obs_variances(sigma1, sigma2, sigma3);
  std::vector<ThreeObsPoint> out;
  out.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    ThreeObsPoint p;
    p.mu = mu;
    p.p_t = normal_linear_power(mu, std::sqrt(v.var_t), alpha);
    p.p_tn = normal_linear_power(mu, std::sqrt(v.var_tn), alpha);
    p.p_to = normal_linear_power(mu, std::sqrt(v.var_to), alpha);
    out.push_back(p);
  }
  return out;
}

/// lo, lo + step, ... up to hi (inclusive up to rounding).
inline std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("invalid grid");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) g[i] = lo + static_cast<double>(i) * step;
  return g;
}

}  // namespace ancillary
