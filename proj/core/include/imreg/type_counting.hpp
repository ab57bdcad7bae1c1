#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "imreg/channel_model.hpp"
#include "imreg/decoders.hpp"
#include "imreg/info_measures.hpp"

namespace imreg {

// Everything in this header is in bits.

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Empirical distribution of (x_i, x_{(i+k) mod n}), kept as integer counts.
struct DelayType {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r = 0;
  std::vector<std::uint64_t> counts;  // r x r, row-major in (a0, a1)

  double prob(std::size_t a0, std::size_t a1) const {
    return static_cast<double>(counts[a0 * r + a1]) / static_cast<double>(n);
  }
  std::vector<std::uint64_t> marginal_counts() const;
  double pair_entropy() const;      // H(X0, X_pi)
  double marginal_entropy() const;  // H(X)

  bool operator==(const DelayType&) const = default;
};

/// Empirical distribution of (x_i, x_{(i+k) mod n}, y_i).
struct JointDelayType {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t r_x = 0;
  std::size_t r_y = 0;
  std::vector<std::uint64_t> counts;  // index (a0 * r_x + a1) * r_y + b

  double triple_entropy() const;  // H(X0, X_pi, Y)
  double pair_entropy() const;    // H(X0, X_pi)

  bool operator==(const JointDelayType&) const = default;
};

/// Number of cycles of the cyclic shift by k on [n]; n for k = 0.
std::size_t shift_cycle_count(std::size_t n, std::size_t k);

/// Largest cycle count over the non-identity members of a family.
std::size_t max_cycle_count(const TransformationFamily& family);

/// Throws ShapeError unless n >= 1, k < n and all symbols are below r.
DelayType delay_type_of(std::span<const Symbol> xs, std::size_t k, std::size_t r);
JointDelayType joint_delay_type_of(std::span<const Symbol> xs, std::span<const Symbol> ys,
                                   std::size_t k, std::size_t r_x, std::size_t r_y);

/// Plain type (symbol counts) of a sequence over [r].
std::vector<std::uint64_t> type_of(std::span<const Symbol> xs, std::size_t r);

/// Throws BudgetError when r^n exceeds the budget.
void check_budget(std::size_t n, std::size_t r, std::uint64_t budget);

/// Number of sequences in [r]^n with delay type q, by enumeration.
std::uint64_t exact_type_class_size(const DelayType& q,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Same for a type given as probabilities; 0 when n q is not integral.
std::uint64_t exact_type_class_size(std::size_t n, std::size_t r, std::size_t k,
                                    std::span<const double> q,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

/// Number of sequences in [r]^n with the given symbol counts, by enumeration.
std::uint64_t exact_marginal_class_size(std::size_t n, std::size_t r,
                                        std::span<const std::uint64_t> type_counts,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

/// Class size of every realizable delay type for shift k, one pass over
/// [r]^n. Keys are DelayType::counts.
std::map<std::vector<std::uint64_t>, std::uint64_t> delay_type_census(
    std::size_t n, std::size_t r, std::size_t k, std::uint64_t budget = kDefaultEnumerationBudget);

/// Class size of every plain type over [r]^n.
std::map<std::vector<std::uint64_t>, std::uint64_t> marginal_type_census(
    std::size_t n, std::size_t r, std::uint64_t budget = kDefaultEnumerationBudget);

/// |T_{Y|X0,X_pi}(xs)| for every joint delay type reachable from xs.
std::map<std::vector<std::uint64_t>, std::uint64_t> conditional_type_census(
    std::span<const Symbol> xs, std::size_t k, std::size_t r_x, std::size_t r_y,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// Number of ys in [r_y]^n with joint delay type q together with xs.
std::uint64_t exact_conditional_class_size(std::span<const Symbol> xs, const JointDelayType& q,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

struct Log2Bounds {
  double lb = 0.0;
  double ub = 0.0;
  bool contains(double v, double tol = 1e-9) const { return lb - tol <= v && v <= ub + tol; }
};

/// (n+1)^{-r} 2^{nH} <= |T| <= 2^{nH} for a plain type.
Log2Bounds type0_bounds(std::size_t n, std::span<const std::uint64_t> type_counts);

/// r (n+1)^{-(r^2+r)} 2^{n(H(X0,X1)-H(X0))} <= |T| <= r 2^{n(H(X0,X1)-H(X0))}.
/// Throws ValidationError unless q is a cyclic first-order type (k = 1 and
/// equal row and column marginals).
Log2Bounds whittle_bounds(const DelayType& q);

/// (n+1)^{-r_x^2 r_y} 2^{n(H(X0,X1,Y)-H(X0,X1))} <= |T_{Y|X0,X1}(x)| <= 2^{n(...)}.
Log2Bounds conditional_markov_bounds(const JointDelayType& q);

struct TypeCountReport {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t kappa = 0;
  double center = 0.0;
  double half_width = 0.0;
  double analytic_lb = 0.0;
  double analytic_ub = 0.0;
  std::optional<std::uint64_t> exact_count;
  std::optional<double> exact_log2_size;
  bool budget_skipped = false;
  // Set when the exact count ran and was positive.
  std::optional<bool> in_band;
};

/// Band n(H(X0,X_pi) - H(X)) + kappa log2 r +- kappa r^2 log2(1 + n/kappa),
/// with the exact class size when r^n fits the budget.
TypeCountReport lemma5_bounds(const DelayType& q,
                              std::uint64_t budget = kDefaultEnumerationBudget);

/// Band [n(H(X0,X_pi,Y) - H(X0,X_pi)), same + kappa r^3 log2(1 + n/kappa)] for
/// the conditional class of q given xs, r = max(r_x, r_y).
TypeCountReport lemma6_bounds(std::span<const Symbol> xs, const JointDelayType& q,
                              std::uint64_t budget = kDefaultEnumerationBudget);

struct ExponentGapReport {
  std::size_t n = 0;
  std::size_t kappa = 0;
  std::size_t r = 0;
  double gap_upper = 0.0;
  double mmi_lower_correction = 0.0;
  double ml_upper_correction = 0.0;
  // The three terms of gap_upper.
  double cycle_term = 0.0;
  double type_count_term = 0.0;
  double union_term = 0.0;
  bool vacuous = false;  // gap_upper >= log2 r: no information
  std::optional<double> e_star;
  std::optional<double> mmi_exponent_lower;  // E* - mmi_lower_correction
  std::optional<double> ml_exponent_upper;   // E* + ml_upper_correction
};

/// Throws PreconditionError unless 1 <= kappa <= n and r >= 2.
ExponentGapReport exponent_gap_bound(std::size_t n, std::size_t kappa, std::size_t r,
                                     std::optional<double> e_star = std::nullopt);

struct GapEstimate {
  std::size_t n = 0;
  ErrorEstimate first;   // MMI by default
  ErrorEstimate second;  // ML by default
  std::uint64_t both_errors = 0;
  double gap_hat = 0.0;  // (log2 p_first - log2 p_second) / n
  double gap_se = 0.0;
  double gap_ci = 0.0;  // 95% half-width
};

/// Plug-in error-exponent gap on common instances with a delta-method
/// interval. Throws InsufficientDataError if either decoder erred fewer than
/// min_errors times.
GapEstimate empirical_gap(const Scenario& scenario, std::uint64_t trials, std::uint64_t seed,
                          unsigned threads = 1, DecoderSpec first = {DecoderKind::kMMI, 0.0},
                          DecoderSpec second = {DecoderKind::kML, 0.0},
                          std::uint64_t min_errors = 20);

}  // namespace imreg
