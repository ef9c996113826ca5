#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ancillary/characterization.hpp"
#include "ancillary/rng.hpp"

namespace ancillary::mp {

struct VerificationLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationConfig {
  std::uint64_t seed = 1;
  std::size_t random_models = 100;
  std::size_t max_outcomes = 8;
  std::size_t dominance_pairs = 1000;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline DiscreteModel curated_model() { return DiscreteModel({0.4, 0.3, 0.2, 0.1}, {0.1, 0.2, 0.3, 0.4}); }

inline FiniteStatistic scaled(const FiniteStatistic& t, double c) {
  FiniteStatistic s = t;
  for (auto& v : s.values) v *= c;
  return s;
}

}  // namespace detail

/// The discrete characterization checks: identities on random models,
/// equivalences on a curated set including coarsened counter-models, and
/// Neyman-Pearson dominance on random (model, T) pairs.
inline std::vector<VerificationLine> run_verification(const VerificationConfig& cfg = {}) {
  std::vector<VerificationLine> out;
  const auto grid = alpha_grid(99);
  RandomStream stream(cfg.seed, {static_cast<std::uint64_t>(StreamPurpose::model)});
  auto draw_m = [&] { return 2 + stream.index(cfg.max_outcomes - 1); };

  // Identities on random models.
  double v11 = 0.0, v21 = 0.0, v23 = 0.0;
  for (std::size_t k = 0; k < cfg.random_models; ++k) {
    const std::size_t m = draw_m();
    const auto model = random_model(m, stream);
    v11 = std::max(v11, check_prop_1_1(model).max_violation);
    const auto a = random_statistic(m, 1 + stream.index(m), stream);
    v21 = std::max(v21, check_prop_2_1(model, a).max_violation);
    auto family = singleton_indicators(m);
    for (int extra = 0; extra < 5; ++extra) {
      FiniteStatistic g;
      g.values.resize(m);
      for (auto& v : g.values) v = stream.uniform();
      family.push_back(g);
    }
    v23 = std::max(v23, check_prop_2_3(model, likelihood_ratio(model), family).max_violation);
  }
  const std::string models = std::to_string(cfg.random_models) + " random models";
  out.push_back({"likelihood ratio identity f1 = u f0 on levels of Lambda", v11 <= identity_tolerance,
                 models + ", max violation " + detail::sci(v11)});
  out.push_back({"joint identity for (Lambda, A)", v21 <= identity_tolerance,
                 models + ", max violation " + detail::sci(v21)});
  out.push_back({"E1 g = E0 g Lambda", v23 <= identity_tolerance, models + ", max violation " + detail::sci(v23)});

  // Curated equivalences.
  const auto model = detail::curated_model();
  const auto lr = likelihood_ratio(model);
  const auto doubled = detail::scaled(lr, 2.0);
  const std::vector<std::size_t> merge{2, 3};
  const auto coarse = coarsened_lr(model, merge);
  FiniteStatistic reversed;
  for (double v : lr.values) reversed.values.push_back(1.0 / v);

  {
    const auto a = check_prop_2_2(model, lr, grid);
    const auto b = check_prop_2_2(model, doubled, grid);
    const auto c = check_prop_2_2(model, coarse, grid);
    const auto d = check_prop_2_2(model, reversed, grid);
    const bool ok = a.is_mp && a.condition_holds && b.is_mp && !b.condition_holds && b.calibration_sensitive() &&
                    !c.is_mp && !c.condition_holds && !d.is_mp && !d.condition_holds && a.consistent() &&
                    b.consistent() && c.consistent() && d.consistent();
    out.push_back({"MP iff f1 = T f0 (Lambda, 2 Lambda, coarsened, reversed)", ok,
                   "2 Lambda is MP without the identity: ordering, not values, decides"});
  }
  {
    RandomStream s2(cfg.seed, {static_cast<std::uint64_t>(StreamPurpose::model), 24});
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
      const auto t2 = random_statistic(model.size(), 3, s2);
      const auto r = check_prop_2_4(model, lr, t2, grid);
      ok = ok && r.hypothesis_holds && r.dominance_holds;
    }
    const auto counter = check_prop_2_4(model, coarse, lr, grid);
    ok = ok && !counter.hypothesis_holds && counter.message == "hypothesis violated; claim not applicable";
    out.push_back({"T1 satisfying the joint identity dominates T2", ok,
                   "20 statistics against Lambda; coarsened counter-model reported as not applicable"});
  }
  {
    const auto a = check_prop_2_5(model, lr, grid);
    const auto b = check_prop_2_5(model, coarse, grid);
    const auto c = check_prop_2_5(model, doubled, grid);
    const bool ok = a.claim_i() && a.claim_ii() && !b.claim_i() && !b.claim_ii() && !b.sufficient && b.ratio_holds &&
                    !c.claim_i() && !c.claim_ii() && a.equivalent() && b.equivalent() && c.equivalent();
    out.push_back({"sufficiency with calibrated ratio iff MP", ok,
                   "Lambda both, coarsened neither (ratio holds, not sufficient), 2 Lambda neither"});
  }
  {
    // Outcome (i, j): i carries the signal, j is ancillary noise.
    const std::vector<double> p0{0.5, 0.3, 0.2}, p1{0.2, 0.3, 0.5}, q{0.25, 0.25, 0.5};
    const auto pm = product_model(p0, p1, q);
    FiniteStatistic tn, a, t;
    for (std::size_t i = 0; i < p0.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) {
        tn.values.push_back(p1[i] / p0[i]);
        a.values.push_back(static_cast<double>(j));
        t.values.push_back(p1[i] / p0[i] + 0.4 * static_cast<double>(j));
      }
    const auto r = check_prop_3_1(pm, t, a, tn, grid);
    FiniteStatistic not_ancillary;
    for (std::size_t x = 0; x < pm.size(); ++x) not_ancillary.values.push_back(static_cast<double>(x / q.size()));
    const auto bad = check_prop_3_1(pm, t, not_ancillary, tn, grid);
    const bool ok = r.premises_hold() && r.dominance_holds && !bad.premises_hold();
    out.push_back({"decorrelated statistic dominates under an independent ancillary", ok,
                   "max shortfall " + detail::sci(r.max_shortfall) + "; non-ancillary A rejected as a premise"});
  }

  // Neyman-Pearson dominance.
  double worst = -1.0;
  for (std::size_t k = 0; k < cfg.dominance_pairs; ++k) {
    const std::size_t m = draw_m();
    const auto mdl = random_model(m, stream);
    const auto t = random_statistic(m, 1 + stream.index(m), stream);
    worst = std::max(worst, power_shortfall(mdl, likelihood_ratio(mdl), t, grid));
  }
  out.push_back({"best_level_power(Lambda) >= best_level_power(T)", worst <= identity_tolerance,
                 std::to_string(cfg.dominance_pairs) + " random pairs, 99-point alpha grid, max shortfall " +
                     detail::sci(worst)});
  return out;
}

inline bool all_passed(const std::vector<VerificationLine>& lines) {
  return std::all_of(lines.begin(), lines.end(), [](const auto& l) { return l.passed; });
}

}  // namespace ancillary::mp
