#pragma once

// Exact checks of the likelihood-ratio characterization of most powerful
// tests on finite outcome spaces. Densities become point masses, so every
// identity is an equality of finite sums and holds up to rounding.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ancillary/rng.hpp"

namespace ancillary::mp {

inline constexpr double identity_tolerance = 1e-12;

/// Finite outcome space {0, ..., m-1} with strictly positive null and
/// alternative probability vectors.
class DiscreteModel {
 public:
  DiscreteModel(std::vector<double> f0, std::vector<double> f1) : f0_(std::move(f0)), f1_(std::move(f1)) {
    if (f0_.size() != f1_.size()) throw std::invalid_argument("f0 and f1 must have the same length");
    if (f0_.size() < 2 || f0_.size() > max_outcomes)
      throw std::invalid_argument("outcome count must lie in [2, " + std::to_string(max_outcomes) + "]");
    for (std::size_t i = 0; i < f0_.size(); ++i)
      if (!(f0_[i] > 0.0) || !(f1_[i] > 0.0)) throw std::invalid_argument("probabilities must be strictly positive");
    const double s0 = std::accumulate(f0_.begin(), f0_.end(), 0.0);
    const double s1 = std::accumulate(f1_.begin(), f1_.end(), 0.0);
    if (std::abs(s0 - 1.0) > identity_tolerance || std::abs(s1 - 1.0) > identity_tolerance)
      throw std::invalid_argument("probability vectors must sum to 1");
  }

  static constexpr std::size_t max_outcomes = 12;

  std::size_t size() const noexcept { return f0_.size(); }
  std::span<const double> f0() const noexcept { return f0_; }
  std::span<const double> f1() const noexcept { return f1_; }

 private:
  std::vector<double> f0_;
  std::vector<double> f1_;
};

/// A statistic on the outcome space: one real value per outcome.
struct FiniteStatistic {
  std::vector<double> values;

  double operator()(std::size_t outcome) const { return values.at(outcome); }
  std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

inline void require_total(const DiscreteModel& model, const FiniteStatistic& t) {
  if (t.size() != model.size()) throw std::invalid_argument("statistic must assign a value to every outcome");
}

struct LevelMass {
  double p0 = 0.0;
  double p1 = 0.0;
};

// Level sets keyed by exact value; statistics built from the same arithmetic
// produce bit-identical values on tied outcomes.
inline std::map<double, LevelMass> levels(const DiscreteModel& model, const FiniteStatistic& t) {
  require_total(model, t);
  std::map<double, LevelMass> out;
  for (std::size_t x = 0; x < model.size(); ++x) {
    auto& lv = out[t.values[x]];
    lv.p0 += model.f0()[x];
    lv.p1 += model.f1()[x];
  }
  return out;
}

inline std::map<std::pair<double, double>, LevelMass> joint_levels(const DiscreteModel& model, const FiniteStatistic& t,
                                                                   const FiniteStatistic& a) {
  require_total(model, t);
  require_total(model, a);
  std::map<std::pair<double, double>, LevelMass> out;
  for (std::size_t x = 0; x < model.size(); ++x) {
    auto& lv = out[{t.values[x], a.values[x]}];
    lv.p0 += model.f0()[x];
    lv.p1 += model.f1()[x];
  }
  return out;
}

}  // namespace detail

inline FiniteStatistic likelihood_ratio(const DiscreteModel& model) {
  FiniteStatistic lr;
  lr.values.resize(model.size());
  for (std::size_t x = 0; x < model.size(); ++x) lr.values[x] = model.f1()[x] / model.f0()[x];
  return lr;
}

/// Identity statistic: distinct value per outcome. Every statistic factors
/// through it, so a joint identity checked against it holds for all A.
inline FiniteStatistic identity_statistic(std::size_t m) {
  FiniteStatistic a;
  a.values.resize(m);
  std::iota(a.values.begin(), a.values.end(), 0.0);
  return a;
}

struct IdentityReport {
  double max_violation = 0.0;
  std::size_t levels = 0;

  bool holds(double tol = identity_tolerance) const { return max_violation <= tol; }
};

/// max over levels u of | P1(T = u) - u P0(T = u) |.
inline IdentityReport ratio_identity(const DiscreteModel& model, const FiniteStatistic& t) {
  IdentityReport r;
  for (const auto& [u, mass] : detail::levels(model, t)) {
    r.max_violation = std::max(r.max_violation, std::abs(mass.p1 - u * mass.p0));
    ++r.levels;
  }
  return r;
}

/// max over joint levels (u, v) of | P1(T = u, A = v) - u P0(T = u, A = v) |.
inline IdentityReport joint_ratio_identity(const DiscreteModel& model, const FiniteStatistic& t,
                                           const FiniteStatistic& a) {
  IdentityReport r;
  for (const auto& [uv, mass] : detail::joint_levels(model, t, a)) {
    r.max_violation = std::max(r.max_violation, std::abs(mass.p1 - uv.first * mass.p0));
    ++r.levels;
  }
  return r;
}

/// The likelihood ratio satisfies f1^Lambda(u) = u f0^Lambda(u).
inline IdentityReport check_prop_1_1(const DiscreteModel& model) {
  return ratio_identity(model, likelihood_ratio(model));
}

/// Joint version with an arbitrary statistic A.
inline IdentityReport check_prop_2_1(const DiscreteModel& model, const FiniteStatistic& a) {
  return joint_ratio_identity(model, likelihood_ratio(model), a);
}

/// Power of the size-alpha randomized threshold test "reject for large T":
/// levels are filled in decreasing order of T until the null mass reaches
/// alpha, randomizing on the boundary level.
inline double best_level_power(const DiscreteModel& model, const FiniteStatistic& t, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const auto lv = detail::levels(model, t);
  double size = 0.0, power = 0.0;
  for (auto it = lv.rbegin(); it != lv.rend(); ++it) {
    const auto& mass = it->second;
    if (size + mass.p0 <= alpha) {
      size += mass.p0;
      power += mass.p1;
      if (size == alpha) break;
      continue;
    }
    const double gamma = (alpha - size) / mass.p0;
    power += gamma * mass.p1;
    break;
  }
  return std::min(power, 1.0);
}

/// alpha = 1/(points+1), ..., points/(points+1).
inline std::vector<double> alpha_grid(std::size_t points = 99) {
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) g[i] = static_cast<double>(i + 1) / static_cast<double>(points + 1);
  return g;
}

/// Largest amount by which `b` beats `a` on the grid (positive means `a` is
/// not dominant somewhere).
inline double power_shortfall(const DiscreteModel& model, const FiniteStatistic& a, const FiniteStatistic& b,
                              std::span<const double> grid) {
  double worst = -1.0;
  for (double alpha : grid)
    worst = std::max(worst, best_level_power(model, b, alpha) - best_level_power(model, a, alpha));
  return worst;
}

/// True when T ranks outcomes consistently with Lambda: Lambda(x) < Lambda(y)
/// implies T(x) < T(y). Such T are most powerful at every alpha.
inline bool ordering_matches_lr(const DiscreteModel& model, const FiniteStatistic& t) {
  detail::require_total(model, t);
  const auto lr = likelihood_ratio(model);
  for (std::size_t x = 0; x < model.size(); ++x)
    for (std::size_t y = 0; y < model.size(); ++y)
      if (lr.values[x] < lr.values[y] && !(t.values[x] < t.values[y])) return false;
  return true;
}

inline bool is_mp_on_grid(const DiscreteModel& model, const FiniteStatistic& t, std::span<const double> grid,
                          double tol = identity_tolerance) {
  return power_shortfall(model, t, likelihood_ratio(model), grid) <= tol;
}

struct Prop22Report {
  bool is_mp = false;            // NP power attained at every grid alpha
  bool condition_holds = false;  // f1(x) = T(x) f0(x) for every outcome
  bool ordering_matches_lr = false;
  double condition_violation = 0.0;

  /// Sufficiency of the identity is checked strictly; an MP statistic that
  /// fails the identity must then be an order-equivalent relabeling of
  /// Lambda (the identity is about values, not ordering).
  bool consistent() const {
    const bool if_direction = !condition_holds || is_mp;
    const bool only_if_direction = !is_mp || condition_holds || ordering_matches_lr;
    return if_direction && only_if_direction;
  }
  bool calibration_sensitive() const { return is_mp && !condition_holds; }
};

/// T is MP iff f1^{T,A}(u, v) = u f0^{T,A}(u, v) for all A. On a finite space
/// A = identity is exhaustive, which reduces the condition to f1 = T f0.
inline Prop22Report check_prop_2_2(const DiscreteModel& model, const FiniteStatistic& t, std::span<const double> grid) {
  detail::require_total(model, t);
  for (double v : t.values)
    if (v < 0.0) throw std::invalid_argument("statistic must be non-negative");
  Prop22Report r;
  r.condition_violation = joint_ratio_identity(model, t, identity_statistic(model.size())).max_violation;
  r.condition_holds = r.condition_violation <= identity_tolerance;
  r.is_mp = is_mp_on_grid(model, t, grid);
  r.ordering_matches_lr = ordering_matches_lr(model, t);
  return r;
}

struct Prop23Report {
  bool holds = false;
  double max_violation = 0.0;
  std::optional<std::size_t> witness;  // index into the family of the worst g
};

/// E1 g = E0 g T for every g in the family. The family must contain all
/// singleton indicators, which are decisive on a finite space.
inline Prop23Report check_prop_2_3(const DiscreteModel& model, const FiniteStatistic& t,
                                   std::span<const FiniteStatistic> g_family) {
  detail::require_total(model, t);
  std::vector<bool> singleton_seen(model.size(), false);
  for (const auto& g : g_family) {
    detail::require_total(model, g);
    std::size_t ones = 0, idx = 0;
    bool indicator = true;
    for (std::size_t x = 0; x < model.size(); ++x) {
      const double v = g.values[x];
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("g must map into [0, 1]");
      if (v == 1.0) {
        ++ones;
        idx = x;
      } else if (v != 0.0) {
        indicator = false;
      }
    }
    if (indicator && ones == 1) singleton_seen[idx] = true;
  }
  if (std::find(singleton_seen.begin(), singleton_seen.end(), false) != singleton_seen.end())
    throw std::invalid_argument("g family must include every singleton indicator to be decisive");

  Prop23Report r;
  for (std::size_t k = 0; k < g_family.size(); ++k) {
    double e1 = 0.0, e0 = 0.0;
    for (std::size_t x = 0; x < model.size(); ++x) {
      e1 += g_family[k].values[x] * model.f1()[x];
      e0 += g_family[k].values[x] * t.values[x] * model.f0()[x];
    }
    const double v = std::abs(e1 - e0);
    if (!r.witness || v > r.max_violation) {
      r.max_violation = v;
      r.witness = k;
    }
  }
  r.holds = r.max_violation <= identity_tolerance;
  if (r.holds) r.witness.reset();
  return r;
}

/// Singleton indicators of every outcome.
inline std::vector<FiniteStatistic> singleton_indicators(std::size_t m) {
  std::vector<FiniteStatistic> out(m);
  for (std::size_t x = 0; x < m; ++x) {
    out[x].values.assign(m, 0.0);
    out[x].values[x] = 1.0;
  }
  return out;
}

struct Prop24Report {
  bool hypothesis_holds = false;
  double hypothesis_violation = 0.0;
  bool dominance_holds = false;  // only meaningful when the hypothesis holds
  double max_shortfall = 0.0;
  std::string message;
};

/// T1 >= 0 is more powerful than T2 when f1^{T1,T2}(u, v) = u f0^{T1,T2}(u, v).
inline Prop24Report check_prop_2_4(const DiscreteModel& model, const FiniteStatistic& t1, const FiniteStatistic& t2,
                                   std::span<const double> grid) {
  for (double v : t1.values)
    if (v < 0.0) throw std::invalid_argument("T1 must be non-negative");
  Prop24Report r;
  r.hypothesis_violation = joint_ratio_identity(model, t1, t2).max_violation;
  r.hypothesis_holds = r.hypothesis_violation <= identity_tolerance;
  r.max_shortfall = power_shortfall(model, t1, t2, grid);
  if (!r.hypothesis_holds) {
    r.message = "hypothesis violated; claim not applicable";
    return r;
  }
  r.dominance_holds = r.max_shortfall <= identity_tolerance;
  r.message = r.dominance_holds ? "T1 dominates T2 on the grid" : "dominance fails";
  return r;
}

struct Prop25Report {
  bool sufficient = false;
  bool ratio_holds = false;  // P1(T = u) = u P0(T = u) on every level
  bool is_mp = false;
  bool calibrated = false;   // f1 = T f0 pointwise
  double sufficiency_violation = 0.0;

  bool claim_i() const { return sufficient && ratio_holds; }
  bool claim_ii() const { return is_mp && calibrated; }
  bool equivalent() const { return claim_i() == claim_ii(); }
};

/// (i) T sufficient with f1^T(u)/f0^T(u) = u  <=>  (ii) T is MP (with
/// calibrated values). Sufficiency: outcome | T has the same law under both
/// hypotheses on every level.
inline Prop25Report check_prop_2_5(const DiscreteModel& model, const FiniteStatistic& t, std::span<const double> grid) {
  const auto lv = detail::levels(model, t);
  Prop25Report r;
  for (std::size_t x = 0; x < model.size(); ++x) {
    const auto& mass = lv.at(t.values[x]);
    const double c0 = model.f0()[x] / mass.p0;
    const double c1 = model.f1()[x] / mass.p1;
    r.sufficiency_violation = std::max(r.sufficiency_violation, std::abs(c0 - c1));
  }
  r.sufficient = r.sufficiency_violation <= identity_tolerance;
  r.ratio_holds = ratio_identity(model, t).holds();
  r.is_mp = is_mp_on_grid(model, t, grid);
  r.calibrated = joint_ratio_identity(model, t, identity_statistic(model.size())).holds();
  return r;
}

struct Prop31Report {
  std::vector<std::string> failed_premises;
  bool dominance_holds = false;
  double max_shortfall = 0.0;

  bool premises_hold() const { return failed_premises.empty(); }
};

/// If A is ancillary, TN and A are independent under both hypotheses, T is a
/// function of (TN, A) and the level ratio of TN is monotone, then TN is at
/// least as powerful as T.
inline Prop31Report check_prop_3_1(const DiscreteModel& model, const FiniteStatistic& t, const FiniteStatistic& a,
                                   const FiniteStatistic& tn, std::span<const double> grid) {
  Prop31Report r;
  const auto a_lv = detail::levels(model, a);
  for (const auto& [v, mass] : a_lv)
    if (std::abs(mass.p0 - mass.p1) > identity_tolerance) {
      r.failed_premises.emplace_back("A is not ancillary");
      break;
    }
  const auto tn_lv = detail::levels(model, tn);
  const auto joint = detail::joint_levels(model, tn, a);
  bool independent = true;
  for (const auto& [u, tm] : tn_lv)
    for (const auto& [v, am] : a_lv) {
      const auto it = joint.find({u, v});
      const double j0 = it == joint.end() ? 0.0 : it->second.p0;
      const double j1 = it == joint.end() ? 0.0 : it->second.p1;
      if (std::abs(j0 - tm.p0 * am.p0) > identity_tolerance || std::abs(j1 - tm.p1 * am.p1) > identity_tolerance)
        independent = false;
    }
  if (!independent) r.failed_premises.emplace_back("TN and A are not independent");

  std::map<std::pair<double, double>, double> t_on_joint;
  bool function_of_pair = true;
  for (std::size_t x = 0; x < model.size(); ++x) {
    const auto key = std::make_pair(tn.values.at(x), a.values.at(x));
    const auto [it, inserted] = t_on_joint.emplace(key, t.values.at(x));
    if (!inserted && it->second != t.values[x]) function_of_pair = false;
  }
  if (!function_of_pair) r.failed_premises.emplace_back("T is not a function of (TN, A)");

  double prev = -1.0;
  bool monotone = true;
  for (const auto& [u, mass] : tn_lv) {
    const double ratio = mass.p1 / mass.p0;
    if (ratio < prev - identity_tolerance) monotone = false;
    prev = std::max(prev, ratio);
  }
  if (!monotone) r.failed_premises.emplace_back("level ratio of TN is not monotone");

  r.max_shortfall = power_shortfall(model, tn, t, grid);
  r.dominance_holds = r.premises_hold() && r.max_shortfall <= identity_tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Model generators.

/// Positive simplex draw (normalized Exp(1) variates, i.e. Dirichlet(1)).
inline std::vector<double> random_simplex(std::size_t m, RandomStream& stream) {
  std::vector<double> p(m);
  double total = 0.0;
  for (auto& v : p) {
    v = stream.exponential() + 1e-3;
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

inline DiscreteModel random_model(std::size_t m, RandomStream& stream) {
  auto f0 = random_simplex(m, stream);
  auto f1 = random_simplex(m, stream);
  return DiscreteModel(std::move(f0), std::move(f1));
}

/// Statistic with values drawn from {0, ..., levels-1}; ties produce
/// coarsenings of the outcome space.
inline FiniteStatistic random_statistic(std::size_t m, std::size_t levels, RandomStream& stream) {
  FiniteStatistic t;
  t.values.resize(m);
  for (auto& v : t.values) v = static_cast<double>(stream.index(levels));
  return t;
}

/// Outcome (i, j) -> i * q.size() + j with f_k(i, j) = p_k(i) q(j).
inline DiscreteModel product_model(std::span<const double> p0, std::span<const double> p1, std::span<const double> q) {
  std::vector<double> f0, f1;
  for (std::size_t i = 0; i < p0.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      f0.push_back(p0[i] * q[j]);
      f1.push_back(p1[i] * q[j]);
    }
  return DiscreteModel(std::move(f0), std::move(f1));
}

/// Merges the outcomes in `group` into one level whose value is the level
/// ratio P1(group)/P0(group); other outcomes keep Lambda.
inline FiniteStatistic coarsened_lr(const DiscreteModel& model, std::span<const std::size_t> group) {
  auto t = likelihood_ratio(model);
  double p0 = 0.0, p1 = 0.0;
  for (std::size_t x : group) {
    p0 += model.f0()[x];
    p1 += model.f1()[x];
  }
  for (std::size_t x : group) t.values.at(x) = p1 / p0;
  return t;
}

}  // namespace ancillary::mp
