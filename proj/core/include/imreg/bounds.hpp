#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "imreg/info_measures.hpp"

namespace imreg {

/// Standard Gaussian upper tail P[Z > tau].
double q_function(double tau);

/// tau with Q(tau) = eps. Throws PreconditionError unless 0 < eps < 1.
double q_inverse(double eps);

/// A probability bound as computed (raw may exceed 1) and clamped to [0, 1]
/// for display.
struct ProbabilityBound {
  double raw = 0.0;
  double value = 0.0;
  bool vacuous = false;  // raw >= 1
  // Natural log of raw; finite even when raw overflows a double.
  double log_raw = 0.0;
};

ProbabilityBound make_bound(double raw);
ProbabilityBound make_bound_from_log(double log_raw);

/// Q((nI - delta) / sqrt(nV)) + B_BE / sqrt(n). Throws DegenerateError for
/// zero dispersion, PreconditionError for n = 0.
ProbabilityBound berry_esseen_cdf_bound(const InfoMoments& mom, std::uint64_t n, double delta);

/// (n+1)^{|X||Y|} exp(-n rate(t)). Throws InfeasibleThreshold above the
/// largest information density and PreconditionError below I.
ProbabilityBound sanov_tail_bound(const JointPMF& p, std::uint64_t n, double t);

/// 6 sqrt(3) (log 2 / sqrt(2 pi) + 2 B) (nV)^{-1/2} exp(-delta / 3) with
/// B = 6T/V. Requires n >= 3 and positive dispersion.
ProbabilityBound derangement_tail_bound(const InfoMoments& mom, std::uint64_t n, double delta);

/// The four-term threshold-decoder bound at one operating point.
struct BoundReport {
  std::uint64_t n = 0;
  double M = 0.0;  // 2 c n^alpha + 1; may be astronomically large
  double alpha = 0.0;
  double c = 0.0;
  double gamma_n = 0.0;
  double delta = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double tau = 0.0;

  double b_be = 0.0;   // 6T / V^{3/2}
  double b_ppv = 0.0;  // 6T / V

  double term_cdf = 0.0;
  double term_be_residual = 0.0;
  double term_derangement = 0.0;
  double term_sanov = 0.0;
  double log_term_sanov = 0.0;
  double total = 0.0;
  bool vacuous = false;

  // Per-sample level at which the large-deviation rate is evaluated.
  double rate_threshold_t = 0.0;
  double rate = 0.0;  // +inf when t exceeds the largest information density
  bool rate_threshold_infeasible = false;
};

/// Lower end of the admissible threshold range:
/// gamma_n n I + 3 alpha ln n + 3 ln c.
double delta_lower(const InfoMoments& mom, std::uint64_t n, double alpha, double c, double gamma_n);

/// Throws DegenerateError for zero dispersion and PreconditionError when
/// delta < delta_lower, gamma_n is outside (0, 1), c <= 0 or n < 3.
BoundReport feinstein_error_bound(const JointPMF& p, std::uint64_t n, double alpha, double c,
                                  double gamma_n, double delta);

struct AchievabilityResult {
  bool ok = false;
  // small_terms >= eps: the target cannot be met at this n at all.
  bool eps_below_small_terms = false;
  double small_terms = 0.0;
  double delta_lb = 0.0;
  double delta_ub = 0.0;  // -inf when eps_below_small_terms
  bool interval_nonempty = false;
  bool side_condition_ok = false;
  double side_lhs = 0.0;  // ln(1 + gamma n) / (gamma n)
  double side_rhs = 0.0;  // rate(t1) / (2 |X||Y|)
  std::optional<BoundReport> witness;  // bound at delta = delta_ub
};

/// B_BE/sqrt(n) + 6 sqrt(3)(log 2/sqrt(2 pi) + 2 B)/sqrt((1 - gamma) n) + c/sqrt(n).
double achievability_small_terms(const InfoMoments& mom, std::uint64_t n, double c,
                                 double gamma_n);

AchievabilityResult achievability_check(const JointPMF& p, std::uint64_t n, double eps,
                                        double alpha, double c, double gamma_n);

/// gamma_n = n^{-exponent} (power) or a fixed value in (0, 1) (constant).
struct GammaSchedule {
  enum class Kind { kPower, kConstant };
  Kind kind = Kind::kPower;
  double value = 0.5;

  static GammaSchedule power(double exponent) { return {Kind::kPower, exponent}; }
  static GammaSchedule constant(double gamma) { return {Kind::kConstant, gamma}; }
  double operator()(std::uint64_t n) const;
  std::string describe() const;
};

struct SampleSizeResult {
  double epsilon = 0.0;
  std::optional<std::uint64_t> n_min;  // empty: not found up to cap
  std::uint64_t cap = 0;
  std::optional<AchievabilityResult> witness;
  bool side_condition_ok = false;
  std::uint64_t evaluations = 0;
};

inline constexpr std::uint64_t kDefaultSampleSizeCap = 1'000'000'000'000ULL;

/// Smallest n <= cap passing achievability_check. Candidates below the first
/// n whose small terms drop under eps are skipped (they cannot pass, and the
/// small terms decrease in n for every supported schedule); from there the
/// scan is linear.
SampleSizeResult min_sample_size(const JointPMF& p, double eps, double alpha, double c,
                                 const GammaSchedule& gamma,
                                 std::uint64_t cap = kDefaultSampleSizeCap);

}  // namespace imreg
