#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ancillary/rng.hpp"

namespace ancillary {

using Sample = std::vector<double>;

enum class DesignTable : std::uint8_t { table1 = 1, table2 = 2, table3 = 3, toy = 4 };

/// Names one data-generating design D_km of a study table. Only registered
/// combinations can be constructed.
class DesignId {
 public:
  DesignId(DesignTable table, int hypothesis, int index) : table_(table), hypothesis_(hypothesis), index_(index) {
    if (hypothesis != 0 && hypothesis != 1) throw std::invalid_argument("design hypothesis must be 0 or 1");
    if (table != DesignTable::table1 && table != DesignTable::table2 && table != DesignTable::table3 &&
        table != DesignTable::toy)
      throw std::invalid_argument("unknown design table");
    const int max_index = (table == DesignTable::toy || table == DesignTable::table2) ? 2 : 4;
    if (index < 1 || index > max_index)
      throw std::invalid_argument("unknown design " + raw_label(table, hypothesis, index));
  }

  /// Parses labels of the form "t1:D01", "t3:D14", "toy:D12".
  static DesignId parse(std::string_view label) {
    const auto colon = label.find(':');
    if (colon == std::string_view::npos || label.size() != colon + 4 || label[colon + 1] != 'D')
      throw std::invalid_argument("malformed design label: " + std::string(label));
    const auto prefix = label.substr(0, colon);
    DesignTable table;
    if (prefix == "t1") table = DesignTable::table1;
    else if (prefix == "t2") table = DesignTable::table2;
    else if (prefix == "t3") table = DesignTable::table3;
    else if (prefix == "toy") table = DesignTable::toy;
    else throw std::invalid_argument("unknown design table in label: " + std::string(label));
    const char k = label[colon + 2];
    const char m = label[colon + 3];
    if (k < '0' || k > '9' || m < '0' || m > '9')
      throw std::invalid_argument("malformed design label: " + std::string(label));
    return DesignId(table, k - '0', m - '0');
  }

  DesignTable table() const noexcept { return table_; }
  int hypothesis() const noexcept { return hypothesis_; }
  int index() const noexcept { return index_; }

  DesignId matched_null() const { return DesignId(table_, 0, index_); }

  std::string label() const { return raw_label(table_, hypothesis_, index_); }

  /// Stable integer key used in stream paths.
  std::uint64_t key() const noexcept {
    return static_cast<std::uint64_t>(table_) * 100 + static_cast<std::uint64_t>(hypothesis_) * 10 +
           static_cast<std::uint64_t>(index_);
  }

  friend bool operator==(const DesignId&, const DesignId&) = default;

 private:
  static std::string raw_label(DesignTable t, int k, int m) {
    std::string prefix = t == DesignTable::table1   ? "t1"
                         : t == DesignTable::table2 ? "t2"
                         : t == DesignTable::table3 ? "t3"
                                                    : "toy";
    return prefix + ":D" + std::to_string(k) + std::to_string(m);
  }

  DesignTable table_;
  int hypothesis_;
  int index_;
};

/// Exact population quantities of a design: mean, SD, third and fourth central
/// moments, median, density at the median and mean absolute deviation about it.
struct DesignParams {
  double mean;
  double sigma;
  double mu3;
  double mu4;
  double median;
  double density_at_median;
  double mean_abs_dev_about_median;
};

namespace detail {

inline constexpr double inv_sqrt_2pi = 0.398942280401432677939946;
inline constexpr double sqrt_2_over_pi = 0.797884560802865355879892;
inline constexpr double ln2 = std::numbers::ln2;

// Standard normal CDF.
inline double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline DesignParams normal_params(double mean, double sd) {
  return {mean, sd, 0.0, 3.0 * sd * sd * sd * sd, mean, inv_sqrt_2pi / sd, sd * sqrt_2_over_pi};
}

// 1 - Exp(1) + shift (sign = -1) or Exp(1) - 1 + shift (sign = +1).
inline DesignParams exp_params(double sign, double shift) {
  return {shift, 1.0, 2.0 * sign, 9.0, shift + sign * (ln2 - 1.0), 0.5, ln2};
}

inline DesignParams laplace_params(double shift) { return {shift, std::sqrt(2.0), 0.0, 24.0, shift, 0.5, 1.0}; }

inline DesignParams neg_lognormal_params() {
  const double e = std::numbers::e;
  const double m1 = std::exp(0.5), m2 = e * e, m3 = std::exp(4.5), m4 = std::exp(8.0);
  const double var = m2 - m1 * m1;
  const double c3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  const double c4 = m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
  const double mad = m1 * (2.0 * phi_cdf(1.0) - 1.0);
  return {0.0, std::sqrt(var), -c3, c4, m1 - 1.0, inv_sqrt_2pi, mad};
}

inline DesignParams uniform_params(double shift) { return {shift, std::sqrt(1.0 / 3.0), 0.0, 0.2, shift, 0.5, 0.5}; }

inline DesignParams arcsine_params(double shift) {
  return {shift, std::sqrt(0.125), 0.0, 3.0 / 128.0, shift, 2.0 / std::numbers::pi, 1.0 / std::numbers::pi};
}

// Toy designs: heteroscedastic normal observations with a common mean. The
// listed params describe the marginal law of a uniformly chosen coordinate.
inline std::span<const double> toy_sigmas(int index) {
  static constexpr std::array<double, 2> fig1a{1.0, 4.0};
  static constexpr std::array<double, 3> fig1b{1.0, 4.0, 3.0};
  if (index == 1) return fig1a;
  return fig1b;
}

inline double toy_mean(int index, int hypothesis) { return hypothesis == 0 ? 0.0 : (index == 1 ? 5.0 : 2.0); }

inline DesignParams toy_params(int index, int hypothesis) {
  const auto sig = toy_sigmas(index);
  double v = 0, v2 = 0, f = 0, mad = 0;
  for (double s : sig) {
    v += s * s;
    v2 += s * s * s * s;
    f += inv_sqrt_2pi / s;
    mad += s * sqrt_2_over_pi;
  }
  const double k = static_cast<double>(sig.size());
  const double mean = toy_mean(index, hypothesis);
  return {mean, std::sqrt(v / k), 0.0, 3.0 * v2 / k, mean, f / k, mad / k};
}

}  // namespace detail

inline DesignParams design_params(const DesignId& d) {
  const double k = d.hypothesis();
  switch (d.table()) {
    case DesignTable::table1:
      switch (d.index()) {
        case 1: return detail::normal_params(0.1 * k, 1.0);
        case 2: return detail::exp_params(-1.0, 0.1 * k);
        case 3: return detail::exp_params(1.0, 0.1 * k);
        default: return detail::exp_params(1.0, 0.2 * k);  // (Weibull(shape 1, scale 2) - 2) / 2
      }
    case DesignTable::table2:
      if (d.index() == 1) return d.hypothesis() == 0 ? detail::laplace_params(0.0) : detail::exp_params(-1.0, 0.0);
      return d.hypothesis() == 0 ? detail::normal_params(0.0, 2.0) : detail::neg_lognormal_params();
    case DesignTable::table3:
      switch (d.index()) {
        case 1: return detail::normal_params(0.1 * k, 1.0);
        case 2: return detail::laplace_params(0.1 * k);
        case 3: return detail::uniform_params(0.1 * k);
        default: return detail::arcsine_params(0.1 * k);
      }
    case DesignTable::toy: return detail::toy_params(d.index(), d.hypothesis());
  }
  throw std::invalid_argument("unknown design");
}

inline std::string design_description(const DesignId& d) {
  const bool h1 = d.hypothesis() == 1;
  switch (d.table()) {
    case DesignTable::table1:
      switch (d.index()) {
        case 1: return h1 ? "X ~ N(0.1, 1)" : "X ~ N(0, 1)";
        case 2: return h1 ? "X = 1 - Exp(1) + 0.1" : "X = 1 - Exp(1)";
        case 3: return h1 ? "X = Exp(1) - 1 + 0.1" : "X = Exp(1) - 1";
        default: return h1 ? "X = (Weibull(shape 1, scale 2) - 2)/2 + 0.2" : "X = (Weibull(shape 1, scale 2) - 2)/2";
      }
    case DesignTable::table2:
      if (d.index() == 1) return h1 ? "X = 1 - Exp(1)" : "X = Exp(1) - Exp(1)";
      return h1 ? "X = exp(0.5) - LN(0, 1)" : "X ~ N(0, 4)";
    case DesignTable::table3:
      switch (d.index()) {
        case 1: return h1 ? "X ~ N(0.1, 1)" : "X ~ N(0, 1)";
        case 2: return h1 ? "X = Exp(1) - Exp(1) + 0.1" : "X = Exp(1) - Exp(1)";
        case 3: return h1 ? "X ~ Unif(-1, 1) + 0.1" : "X ~ Unif(-1, 1)";
        default: return h1 ? "X = Beta(0.5, 0.5) - 0.5 + 0.1" : "X = Beta(0.5, 0.5) - 0.5";
      }
    case DesignTable::toy:
      if (d.index() == 1) return h1 ? "X1 ~ N(5, 1), X2 ~ N(5, 16)" : "X1 ~ N(0, 1), X2 ~ N(0, 16)";
      return h1 ? "X1 ~ N(2, 1), X2 ~ N(2, 16), X3 ~ N(2, 9)" : "X1 ~ N(0, 1), X2 ~ N(0, 16), X3 ~ N(0, 9)";
  }
  return {};
}

/// Fills `out` with independent draws from the design. The base variates are
/// drawn identically for k = 0 and k = 1, so with equal streams the H1 sample
/// of a location family is the H0 sample plus the shift.
inline void sample_design_into(const DesignId& d, std::span<double> out, RandomStream& stream) {
  const std::size_t n = out.size();
  if (n < 2) throw std::invalid_argument("sample size must be at least 2");
  const double k = d.hypothesis();
  switch (d.table()) {
    case DesignTable::table1:
      switch (d.index()) {
        case 1:
          for (auto& x : out) x = stream.normal() + 0.1 * k;
          return;
        case 2:
          for (auto& x : out) x = 1.0 - stream.exponential() + 0.1 * k;
          return;
        case 3:
          for (auto& x : out) x = stream.exponential() - 1.0 + 0.1 * k;
          return;
        default:
          for (auto& x : out) x = (stream.weibull(1.0, 2.0) - 2.0) / 2.0 + 0.2 * k;
          return;
      }
    case DesignTable::table2:
      if (d.index() == 1) {
        if (k == 0) {
          for (auto& x : out) {
            const double eta = stream.exponential();
            x = eta - stream.exponential();
          }
        } else {
          for (auto& x : out) x = 1.0 - stream.exponential();
        }
      } else {
        if (k == 0) {
          for (auto& x : out) x = 2.0 * stream.normal();
        } else {
          const double c = std::exp(0.5);
          for (auto& x : out) x = c - stream.lognormal(0.0, 1.0);
        }
      }
      return;
    case DesignTable::table3:
      switch (d.index()) {
        case 1:
          for (auto& x : out) x = stream.normal() + 0.1 * k;
          return;
        case 2:
          for (auto& x : out) {
            const double eta = stream.exponential();
            x = eta - stream.exponential() + 0.1 * k;
          }
          return;
        case 3:
          for (auto& x : out) x = stream.uniform(-1.0, 1.0) + 0.1 * k;
          return;
        default:
          for (auto& x : out) x = stream.arcsine() - 0.5 + 0.1 * k;
          return;
      }
    case DesignTable::toy: {
      const auto sig = detail::toy_sigmas(d.index());
      if (n != sig.size())
        throw std::invalid_argument("toy design " + d.label() + " has exactly " + std::to_string(sig.size()) +
                                    " observations");
      const double mu = detail::toy_mean(d.index(), d.hypothesis());
      for (std::size_t i = 0; i < n; ++i) out[i] = mu + sig[i] * stream.normal();
      return;
    }
  }
}

inline Sample sample_design(const DesignId& d, std::size_t n, RandomStream& stream) {
  if (n < 2) throw std::invalid_argument("sample size must be at least 2");
  Sample x(n);
  sample_design_into(d, x, stream);
  return x;
}

struct DesignEntry {
  DesignId id;
  std::string description;
};

/// Registered designs in table order, null before alternative within each family.
inline std::vector<DesignEntry> list_designs() {
  std::vector<DesignEntry> out;
  auto add_table = [&](DesignTable t, int families) {
    for (int m = 1; m <= families; ++m)
      for (int k = 0; k <= 1; ++k) {
        DesignId id(t, k, m);
        out.push_back({id, design_description(id)});
      }
  };
  add_table(DesignTable::table1, 4);
  add_table(DesignTable::table2, 2);
  add_table(DesignTable::table3, 4);
  add_table(DesignTable::toy, 2);
  return out;
}

}  // namespace ancillary
