#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ancillary/designs.hpp"
#include "ancillary/empirical.hpp"
#include "ancillary/location_tests.hpp"
#include "ancillary/parallel.hpp"
#include "ancillary/reference.hpp"
#include "ancillary/rng.hpp"

namespace ancillary {

/// Statistics the engine knows how to evaluate on a replication sample.
enum class StudyTest : std::uint8_t {
  mean_to,          // known-sigma t statistic
  mean_tn,          // skewness-corrected mean statistic
  mean_tb,          // bootstrap-calibrated t statistic
  wilcoxon,         // one-sided signed rank
  median_to,        // 2 sqrt(n) med f_hat
  median_tn,        // decorrelated median statistic
  symmetry_to,
  symmetry_t1,
  symmetry_tn,
  wilcoxon_sq,      // two-sided signed rank, z^2 against chi2_1
  median_to_sq,
  median_tn_sq,
  median_to_thomas,  // -n log(1 - T_o^2 / n)
  median_tn_thomas,
};

inline constexpr std::size_t study_test_count = 14;

inline std::string_view test_label(StudyTest t) {
  switch (t) {
    case StudyTest::mean_to:
    case StudyTest::median_to:
    case StudyTest::symmetry_to: return "T_o";
    case StudyTest::mean_tn:
    case StudyTest::median_tn:
    case StudyTest::symmetry_tn: return "T_N";
    case StudyTest::mean_tb: return "T_B";
    case StudyTest::wilcoxon: return "W";
    case StudyTest::symmetry_t1: return "T_1";
    case StudyTest::wilcoxon_sq: return "W2";
    case StudyTest::median_to_sq: return "T_o^2";
    case StudyTest::median_tn_sq: return "T_N^2";
    case StudyTest::median_to_thomas: return "T_o1^2";
    case StudyTest::median_tn_thomas: return "T_N1^2";
  }
  return "?";
}

/// Rank statistics have a distribution-free null law, so their Pow is their
/// PowA. Every other statistic is calibrated by the null quantile.
inline bool calibrated_by_null_quantile(StudyTest t) {
  return t != StudyTest::wilcoxon && t != StudyTest::wilcoxon_sq;
}

struct StudyPlan {
  std::vector<StudyTest> tests;
  DesignId null_design{DesignTable::table1, 0, 1};
  DesignId design{DesignTable::table1, 0, 1};
  std::vector<std::size_t> sample_sizes;
  double alpha = 0.05;
  std::size_t reps = 55000;
  std::uint64_t root_seed = 1;
  std::size_t bootstrap_resamples = 1000;
  MomentVariant variant = MomentVariant::paper;
  std::size_t threads = 1;

  void validate() const {
    if (tests.empty()) throw std::invalid_argument("plan has no tests");
    if (sample_sizes.empty()) throw std::invalid_argument("plan has no sample sizes");
    for (std::size_t n : sample_sizes)
      if (n < 5) throw std::invalid_argument("sample sizes must be at least 5");
    if (reps < 1) throw std::invalid_argument("reps must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (null_design.hypothesis() != 0) throw std::invalid_argument("null design must be a D_0m design");
    if (design.matched_null() != null_design) throw std::invalid_argument("design and null design do not share m");
    if (threads < 1) throw std::invalid_argument("threads must be positive");
    for (StudyTest t : tests)
      if (t == StudyTest::mean_tb && bootstrap_resamples < 100)
        throw std::invalid_argument("bootstrap needs at least 100 resamples");
  }
};

struct PowerEstimate {
  double powa = 0.0;
  double pow = 0.0;
  std::size_t reps = 0;
  std::size_t degenerate_count = 0;
  double mc_se_powa = 0.0;
  double mc_se_pow = 0.0;
  // On the scale of the calibration score: the statistic itself, except for
  // T_B whose score is statistic minus its bootstrap threshold. For rank
  // tests this is the asymptotic threshold.
  double null_quantile_used = 0.0;
  std::array<std::size_t, 8> degenerate_by_reason{};
};

inline double mc_standard_error(double p, std::size_t reps) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

/// Per-replication results of one (design, n) cell, test-major.
struct CellSimulation {
  std::vector<StudyTest> tests;
  std::size_t reps = 0;
  std::vector<double> scores;          // calibration score, -inf when degenerate
  std::vector<std::uint8_t> rejects;   // asymptotic rejection indicator
  std::vector<std::uint8_t> reasons;   // Degeneracy as integer

  std::span<const double> scores_of(std::size_t test_index) const {
    return {scores.data() + test_index * reps, reps};
  }
  std::span<const std::uint8_t> rejects_of(std::size_t test_index) const {
    return {rejects.data() + test_index * reps, reps};
  }
  std::span<const std::uint8_t> reasons_of(std::size_t test_index) const {
    return {reasons.data() + test_index * reps, reps};
  }
};

struct CellConfig {
  double alpha = 0.05;
  std::uint64_t root_seed = 1;
  std::size_t bootstrap_resamples = 1000;
  MomentVariant variant = MomentVariant::paper;
  std::size_t threads = 1;
};

namespace detail {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

struct ReplicationResult {
  double score = neg_inf;
  bool reject = false;
  Degeneracy reason = Degeneracy::none;
};

inline ReplicationResult from_evaluation(const Evaluation& e) {
  if (!e.ok()) return {neg_inf, false, e.degeneracy};
  return {e.outcome.statistic, e.outcome.reject, Degeneracy::none};
}

inline ReplicationResult squared(const Evaluation& e, double alpha) {
  if (!e.ok()) return {neg_inf, false, e.degeneracy};
  const auto o = two_sided(e.outcome, alpha);
  return {o.statistic, o.reject, Degeneracy::none};
}

// T^2 >= n lies outside the domain of the transform; the transform tends to
// +inf at the boundary, so such values map to +inf and keep their order.
inline ReplicationResult thomas(const Evaluation& e, std::size_t n, double alpha) {
  if (!e.ok()) return {neg_inf, false, e.degeneracy};
  const double t2 = e.outcome.statistic * e.outcome.statistic;
  const double v = t2 < static_cast<double>(n) ? thomas_transform(t2, n) : std::numeric_limits<double>::infinity();
  return {v, v > chi2_1_alpha(alpha), Degeneracy::none};
}

/// Evaluates every requested test on one replication sample.
class ReplicationEvaluator {
 public:
  ReplicationEvaluator(const std::vector<StudyTest>& tests, const DesignId& design, const CellConfig& cfg)
      : tests_(tests), design_(design), cfg_(cfg), sigma_(design_params(design).sigma) {
    for (StudyTest t : tests) {
      switch (t) {
        case StudyTest::median_to:
        case StudyTest::median_tn:
        case StudyTest::symmetry_to:
        case StudyTest::symmetry_t1:
        case StudyTest::symmetry_tn:
        case StudyTest::median_to_sq:
        case StudyTest::median_tn_sq:
        case StudyTest::median_to_thomas:
        case StudyTest::median_tn_thomas: needs_summary_ = true; break;
        default: break;
      }
    }
  }

  template <class Sink>
  void run(std::size_t n, std::size_t rep, std::span<double> x, Sink&& sink) const {
    RandomStream data(cfg_.root_seed, {design_.key(), n, rep, static_cast<std::uint64_t>(StreamPurpose::data)});
    sample_design_into(design_, x, data);
    std::optional<LocationSummary> summary;
    if (needs_summary_) summary = try_location_summary(x);
    const double a = cfg_.alpha;
    for (std::size_t i = 0; i < tests_.size(); ++i) {
      const StudyTest t = tests_[i];
      auto with_summary = [&](auto&& f) -> ReplicationResult {
        if (!summary) return {neg_inf, false, Degeneracy::constant_sample};
        return f(*summary);
      };
      ReplicationResult r;
      switch (t) {
        case StudyTest::mean_to: r = from_evaluation(evaluate_t_test_known_sigma(x, sigma_, a)); break;
        case StudyTest::mean_tn:
          r = from_evaluation(evaluate_modified_mean_test(x, sigma_, a, cfg_.variant));
          break;
        case StudyTest::mean_tb: {
          RandomStream boot(cfg_.root_seed,
                            {design_.key(), n, rep, static_cast<std::uint64_t>(StreamPurpose::bootstrap)});
          const auto e = evaluate_bootstrap_t_test(x, sigma_, a, cfg_.bootstrap_resamples, boot);
          r = from_evaluation(e);
          if (e.ok()) r.score = e.outcome.statistic - e.outcome.threshold;
          break;
        }
        case StudyTest::wilcoxon:
          r = from_evaluation(evaluate_wilcoxon_signed_rank(x, WilcoxonSide::one_sided_upper, a));
          break;
        case StudyTest::wilcoxon_sq:
          r = from_evaluation(evaluate_wilcoxon_signed_rank(x, WilcoxonSide::two_sided, a));
          break;
        case StudyTest::median_to:
          r = with_summary([&](const auto& s) { return from_evaluation(evaluate_median_test_to(s, a)); });
          break;
        case StudyTest::median_tn:
          r = with_summary([&](const auto& s) { return from_evaluation(evaluate_median_test_tn(s, a)); });
          break;
        case StudyTest::median_to_sq:
          r = with_summary([&](const auto& s) { return squared(evaluate_median_test_to(s, a), a); });
          break;
        case StudyTest::median_tn_sq:
          r = with_summary([&](const auto& s) { return squared(evaluate_median_test_tn(s, a), a); });
          break;
        case StudyTest::median_to_thomas:
          r = with_summary([&](const auto& s) { return thomas(evaluate_median_test_to(s, a), n, a); });
          break;
        case StudyTest::median_tn_thomas:
          r = with_summary([&](const auto& s) { return thomas(evaluate_median_test_tn(s, a), n, a); });
          break;
        case StudyTest::symmetry_to:
          r = with_summary(
              [&](const auto& s) { return from_evaluation(evaluate_symmetry_test(s, SymmetryStatistic::to, a)); });
          break;
        case StudyTest::symmetry_t1:
          r = with_summary(
              [&](const auto& s) { return from_evaluation(evaluate_symmetry_test(s, SymmetryStatistic::t1, a)); });
          break;
        case StudyTest::symmetry_tn:
          r = with_summary(
              [&](const auto& s) { return from_evaluation(evaluate_symmetry_test(s, SymmetryStatistic::tn, a)); });
          break;
      }
      sink(i, r);
    }
  }

 private:
  const std::vector<StudyTest>& tests_;
  DesignId design_;
  CellConfig cfg_;
  double sigma_;
  bool needs_summary_ = false;
};

/// Type-7 quantile that tolerates -inf entries (degenerate replications):
/// interpolating towards -inf yields -inf.
inline double score_quantile_sorted(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || sorted[lo] == sorted[hi]) return sorted[lo];
  if (std::isinf(sorted[lo]) || std::isinf(sorted[hi])) return frac < 1.0 ? sorted[lo] : sorted[hi];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

/// Runs all tests on reps replications of design at sample size n. Replication
/// i always draws from the stream path (design, n, i), so the result does not
/// depend on cfg.threads.
inline CellSimulation simulate_cell(const std::vector<StudyTest>& tests, const DesignId& design, std::size_t n,
                                    std::size_t reps, const CellConfig& cfg) {
  if (tests.empty()) throw std::invalid_argument("no tests to simulate");
  if (n < 5) throw std::invalid_argument("sample size must be at least 5");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  CellSimulation cell;
  cell.tests = tests;
  cell.reps = reps;
  const std::size_t k = tests.size();
  cell.scores.assign(k * reps, detail::neg_inf);
  cell.rejects.assign(k * reps, 0);
  cell.reasons.assign(k * reps, 0);
  const detail::ReplicationEvaluator eval(cell.tests, design, cfg);
  parallel_chunks(reps, cfg.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> x(n);
    for (std::size_t rep = begin; rep < end; ++rep) {
      eval.run(n, rep, x, [&](std::size_t i, const detail::ReplicationResult& r) {
        cell.scores[i * reps + rep] = r.score;
        cell.rejects[i * reps + rep] = r.reject ? 1 : 0;
        cell.reasons[i * reps + rep] = static_cast<std::uint8_t>(r.reason);
      });
    }
  });
  return cell;
}

/// Type-7 (1 - alpha) quantile of one test's null scores.
inline double null_quantile_from(const CellSimulation& null_cell, std::size_t test_index, double alpha) {
  std::vector<double> s(null_cell.scores_of(test_index).begin(), null_cell.scores_of(test_index).end());
  if (std::all_of(s.begin(), s.end(), [](double v) { return v == detail::neg_inf; }))
    throw std::runtime_error("all null replications degenerate for " + std::string(test_label(null_cell.tests[test_index])));
  std::sort(s.begin(), s.end());
  return detail::score_quantile_sorted(s, 1.0 - alpha);
}

/// Scores test test_index of cell, with Pow computed against null_quantile.
inline PowerEstimate score_cell(const CellSimulation& cell, std::size_t test_index, double null_quantile) {
  PowerEstimate p;
  p.reps = cell.reps;
  const auto scores = cell.scores_of(test_index);
  const auto rejects = cell.rejects_of(test_index);
  const auto reasons = cell.reasons_of(test_index);
  std::size_t asym = 0, cal = 0;
  for (std::size_t r = 0; r < cell.reps; ++r) {
    asym += rejects[r];
    if (scores[r] > null_quantile) ++cal;
    if (reasons[r] != 0) {
      ++p.degenerate_count;
      ++p.degenerate_by_reason[reasons[r]];
    }
  }
  if (p.degenerate_count == cell.reps)
    throw std::runtime_error("all replications degenerate for " + std::string(test_label(cell.tests[test_index])));
  const double reps = static_cast<double>(cell.reps);
  p.powa = static_cast<double>(asym) / reps;
  if (calibrated_by_null_quantile(cell.tests[test_index])) {
    p.pow = static_cast<double>(cal) / reps;
    p.null_quantile_used = null_quantile;
  } else {
    p.pow = p.powa;
    p.null_quantile_used = null_quantile;
  }
  p.mc_se_powa = mc_standard_error(p.powa, cell.reps);
  p.mc_se_pow = mc_standard_error(p.pow, cell.reps);
  return p;
}

/// PowA and Pow of every test in null_cell and (for an alternative) alt_cell.
/// The null replication set both estimates the quantile and, for the null
/// design itself, is the set being scored; alternatives are independent of it.
inline std::vector<PowerEstimate> score_against_null(const CellSimulation& null_cell, const CellSimulation& cell,
                                                     double alpha) {
  std::vector<PowerEstimate> out;
  out.reserve(cell.tests.size());
  for (std::size_t i = 0; i < cell.tests.size(); ++i) {
    const double q = calibrated_by_null_quantile(cell.tests[i])
                         ? null_quantile_from(null_cell, i, alpha)
                         : (cell.tests[i] == StudyTest::wilcoxon ? z_alpha(alpha) : chi2_1_alpha(alpha));
    out.push_back(score_cell(cell, i, q));
  }
  return out;
}

struct PowerRow {
  StudyTest test;
  DesignId design;
  std::size_t n = 0;
  PowerEstimate estimate;
};

inline CellConfig cell_config(const StudyPlan& plan) {
  return {plan.alpha, plan.root_seed, plan.bootstrap_resamples, plan.variant, plan.threads};
}

/// PowA and Pow for each (test, n) of plan.design.
inline std::vector<PowerRow> estimate_power(const StudyPlan& plan) {
  plan.validate();
  const auto cfg = cell_config(plan);
  std::vector<PowerRow> rows;
  for (std::size_t n : plan.sample_sizes) {
    const auto null_cell = simulate_cell(plan.tests, plan.null_design, n, plan.reps, cfg);
    std::vector<PowerEstimate> est;
    if (plan.design == plan.null_design) {
      est = score_against_null(null_cell, null_cell, plan.alpha);
    } else {
      const auto alt = simulate_cell(plan.tests, plan.design, n, plan.reps, cfg);
      est = score_against_null(null_cell, alt, plan.alpha);
    }
    for (std::size_t i = 0; i < plan.tests.size(); ++i) rows.push_back({plan.tests[i], plan.design, n, est[i]});
  }
  return rows;
}

/// Type-7 (1 - alpha) quantile of the calibration score over reps fresh null
/// samples; degenerate replications count as -inf.
inline double null_quantile(StudyTest test, const DesignId& null_design, std::size_t n, std::size_t reps,
                            double alpha, std::uint64_t seed, const CellConfig& base = {}) {
  if (reps < 1000) throw std::invalid_argument("null quantile needs reps >= 1000");
  if (null_design.hypothesis() != 0) throw std::invalid_argument("null quantile needs a D_0m design");
  CellConfig cfg = base;
  cfg.alpha = alpha;
  cfg.root_seed = seed;
  const auto cell = simulate_cell({test}, null_design, n, reps, cfg);
  return null_quantile_from(cell, 0, alpha);
}

// ---------------------------------------------------------------------------
// Table layouts.

inline DesignTable table_of(int table) {
  switch (table) {
    case 1: return DesignTable::table1;
    case 2: return DesignTable::table2;
    case 3: return DesignTable::table3;
  }
  throw std::invalid_argument("table must be 1, 2 or 3");
}

inline std::vector<StudyTest> table_tests(int table) {
  switch (table) {
    case 1: return {StudyTest::mean_to, StudyTest::mean_tn, StudyTest::mean_tb};
    case 2: return {StudyTest::wilcoxon, StudyTest::median_to, StudyTest::median_tn};
    case 3: return {StudyTest::wilcoxon, StudyTest::symmetry_to, StudyTest::symmetry_t1, StudyTest::symmetry_tn};
  }
  throw std::invalid_argument("table must be 1, 2 or 3");
}

inline std::vector<std::size_t> table_sample_sizes(int table) {
  switch (table) {
    case 1: return {150, 200, 250, 300, 350};
    case 2: return {25, 50, 75};
    case 3: return {50, 150};
  }
  throw std::invalid_argument("table must be 1, 2 or 3");
}

inline int table_families(int table) { return table == 2 ? 2 : (table_of(table), 4); }

struct TableRequest {
  int table = 1;
  std::size_t reps = 55000;
  std::uint64_t root_seed = 1;
  MomentVariant variant = MomentVariant::paper;
  double alpha = 0.05;
  std::size_t bootstrap_resamples = 1000;
  std::size_t threads = 1;
  // Optional restrictions; empty means the full layout.
  std::vector<std::size_t> sample_sizes;
  std::vector<int> families;
  std::vector<StudyTest> tests;
};

struct TableRow {
  DesignId design;
  StudyTest test;
  std::vector<PowerEstimate> cells;  // one per sample size
};

struct TableReport {
  int table = 0;
  std::size_t reps = 0;
  std::uint64_t root_seed = 0;
  double alpha = 0.05;
  MomentVariant variant = MomentVariant::paper;
  std::size_t bootstrap_resamples = 0;
  std::vector<std::size_t> sample_sizes;
  std::vector<TableRow> rows;

  const TableRow& row(const DesignId& d, StudyTest t) const {
    for (const auto& r : rows)
      if (r.design == d && r.test == t) return r;
    throw std::out_of_range("no row " + d.label() + " " + std::string(test_label(t)));
  }

  const PowerEstimate& cell(const DesignId& d, StudyTest t, std::size_t n) const {
    const auto& r = row(d, t);
    for (std::size_t j = 0; j < sample_sizes.size(); ++j)
      if (sample_sizes[j] == n) return r.cells[j];
    throw std::out_of_range("no column n=" + std::to_string(n));
  }
};

/// Full PowA/Pow grid of a table, rows ordered D_01, D_11, D_02, D_12, ...
inline TableReport reproduce_table(const TableRequest& req) {
  const DesignTable dt = table_of(req.table);
  if (req.reps < 1000) throw std::invalid_argument("table reproduction needs reps >= 1000");
  TableReport rep;
  rep.table = req.table;
  rep.reps = req.reps;
  rep.root_seed = req.root_seed;
  rep.alpha = req.alpha;
  rep.variant = req.variant;
  rep.bootstrap_resamples = req.bootstrap_resamples;
  rep.sample_sizes = req.sample_sizes.empty() ? table_sample_sizes(req.table) : req.sample_sizes;
  const auto tests = req.tests.empty() ? table_tests(req.table) : req.tests;
  std::vector<int> families = req.families;
  if (families.empty())
    for (int m = 1; m <= table_families(req.table); ++m) families.push_back(m);

  CellConfig cfg{req.alpha, req.root_seed, req.bootstrap_resamples, req.variant, req.threads};
  for (int m : families) {
    const DesignId null_d(dt, 0, m), alt_d(dt, 1, m);
    TableRow null_row_proto{null_d, tests.front(), {}};
    std::vector<TableRow> null_rows, alt_rows;
    for (StudyTest t : tests) {
      null_rows.push_back({null_d, t, {}});
      alt_rows.push_back({alt_d, t, {}});
    }
    for (std::size_t n : rep.sample_sizes) {
      const auto null_cell = simulate_cell(tests, null_d, n, req.reps, cfg);
      const auto alt_cell = simulate_cell(tests, alt_d, n, req.reps, cfg);
      const auto null_est = score_against_null(null_cell, null_cell, req.alpha);
      const auto alt_est = score_against_null(null_cell, alt_cell, req.alpha);
      for (std::size_t i = 0; i < tests.size(); ++i) {
        null_rows[i].cells.push_back(null_est[i]);
        alt_rows[i].cells.push_back(alt_est[i]);
      }
    }
    rep.rows.insert(rep.rows.end(), null_rows.begin(), null_rows.end());
    rep.rows.insert(rep.rows.end(), alt_rows.begin(), alt_rows.end());
  }
  return rep;
}

inline TableReport reproduce_table(int table, std::size_t reps, std::uint64_t seed, MomentVariant variant,
                                   std::size_t threads = 1) {
  TableRequest req;
  req.table = table;
  req.reps = reps;
  req.root_seed = seed;
  req.variant = variant;
  req.threads = threads;
  return reproduce_table(req);
}

// ---------------------------------------------------------------------------
// Monotone-transform check on a shared replication set.

struct ThomasComparison {
  std::vector<std::uint8_t> plain_indicator;        // T^2 > q(T^2)
  std::vector<std::uint8_t> transformed_indicator;  // Thomas(T^2) > q(Thomas(T^2))
  double plain_powa = 0.0;
  double transformed_powa = 0.0;
  double plain_pow = 0.0;
  double transformed_pow = 0.0;

  bool identical() const { return plain_indicator == transformed_indicator; }
};

/// Pow rejection indicators of T^2 and its Thomas transform on the same
/// alternative replications, each calibrated on the same null replications.
inline ThomasComparison thomas_comparison(bool decorrelated, const DesignId& design, std::size_t n, std::size_t reps,
                                          const CellConfig& cfg) {
  const std::vector<StudyTest> tests = decorrelated
                                           ? std::vector{StudyTest::median_tn_sq, StudyTest::median_tn_thomas}
                                           : std::vector{StudyTest::median_to_sq, StudyTest::median_to_thomas};
  const auto null_cell = simulate_cell(tests, design.matched_null(), n, reps, cfg);
  const auto alt_cell = design.hypothesis() == 0 ? null_cell : simulate_cell(tests, design, n, reps, cfg);
  ThomasComparison c;
  std::array<std::vector<std::uint8_t>*, 2> ind{&c.plain_indicator, &c.transformed_indicator};
  std::array<double*, 2> powa{&c.plain_powa, &c.transformed_powa};
  std::array<double*, 2> pow{&c.plain_pow, &c.transformed_pow};
  for (std::size_t i = 0; i < 2; ++i) {
    const double q = null_quantile_from(null_cell, i, cfg.alpha);
    const auto scores = alt_cell.scores_of(i);
    ind[i]->resize(reps);
    for (std::size_t r = 0; r < reps; ++r) (*ind[i])[r] = scores[r] > q ? 1 : 0;
    const auto est = score_cell(alt_cell, i, q);
    *powa[i] = est.powa;
    *pow[i] = est.pow;
  }
  return c;
}

}  // namespace ancillary
