#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "imreg/channel_model.hpp"
#include "imreg/info_measures.hpp"
#include "imreg/permutations.hpp"

namespace imreg {

/// Outcome of one registration decision. The chosen transformation is
/// family[*index]; only the threshold decoder can return no index.
struct DecodeResult {
  std::optional<std::size_t> index;
  // Log-likelihood (ML), empirical MI in nats (MMI) or summed information
  // density in nats (threshold decoder) of the chosen member.
  double score = 0.0;
  std::optional<double> threshold_used;
  // ML only: every member had a zero-probability term.
  bool all_scores_infinite = false;
};

/// argmax over the family of sum_i log W(ys[pi(i)] | xs[i]); ties (scores within
/// a relative 1e-12) resolve to the earliest member. Throws DegenerateError if
/// xs uses a symbol with zero x-marginal (the conditional is then undefined).
DecodeResult ml_decode(const JointPMF& p, std::span<const Symbol> xs, std::span<const Symbol> ys,
                       const TransformationFamily& family);

/// argmax over the family of the empirical MI between xs and ys o pi, with the
/// same tie rule.
DecodeResult mmi_decode(std::span<const Symbol> xs, std::span<const Symbol> ys,
                        const TransformationFamily& family, std::size_t x_size,
                        std::size_t y_size);

/// First member (family order) whose summed information density reaches
/// delta; no index if none does.
DecodeResult feinstein_decode(const JointPMF& p, std::span<const Symbol> xs,
                              std::span<const Symbol> ys, const TransformationFamily& family,
                              double delta);

/// lhs = i(x; y_pi); rhs = log-likelihood of (x, y_pi) plus
/// C = -log p(x) - log p(y), with C evaluated on the unpermuted y.
struct LrtEquivalence {
  double lhs = 0.0;
  double rhs = 0.0;
};
LrtEquivalence lrt_equivalence_check(const JointPMF& p, std::span<const Symbol> xs,
                                     std::span<const Symbol> ys, const Permutation& pi);

/// Binomial error-rate estimate with a 95% Wilson score interval.
struct ErrorEstimate {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  double half_width() const noexcept { return 0.5 * (ci_high - ci_low); }
  /// Plug-in standard error sqrt(p(1-p)/trials).
  double sigma() const noexcept;
};

ErrorEstimate wilson_estimate(std::uint64_t errors, std::uint64_t trials);

enum class DecoderKind { kML, kMMI, kFeinstein };

struct DecoderSpec {
  DecoderKind kind = DecoderKind::kML;
  double delta = 0.0;  // threshold decoder only, nats
};

std::string to_string(DecoderKind kind);
/// Parses "ml", "mmi" or "feinstein"; throws PreconditionError otherwise.
DecoderKind parse_decoder_kind(const std::string& name);

/// Runs one decoder on an instance and reports whether it missed the correct
/// registration inverse(family[true_index]). A missing decision is an error.
class TrialDecoder {
 public:
  TrialDecoder(DecoderSpec spec, const Scenario& scenario);

  DecodeResult decode(std::span<const Symbol> xs, std::span<const Symbol> ys) const;
  bool is_error(const DecodeResult& result, std::size_t true_index) const;

 private:
  DecoderSpec spec_;
  const Scenario* scenario_;
  std::vector<std::optional<std::size_t>> inverse_index_;
};

/// Fraction of `trials` seeded instances the decoder gets wrong. Trial t uses
/// sample_instance(scenario, seed, t); the result does not depend on
/// `threads`.
ErrorEstimate monte_carlo_error(const DecoderSpec& spec, const Scenario& scenario,
                                std::uint64_t trials, std::uint64_t seed, unsigned threads = 1);

/// Per-trial error indicators of several decoders on common instances.
struct JointErrorCounts {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> errors;            // per decoder
  std::vector<std::vector<std::uint64_t>> both;  // both[a][b]: trials where a and b both erred
};
JointErrorCounts monte_carlo_joint(std::span<const DecoderSpec> specs, const Scenario& scenario,
                                   std::uint64_t trials, std::uint64_t seed,
                                   unsigned threads = 1);

/// Monte Carlo estimates of the two terms of the union bound for the
/// threshold decoder, both under the aligned hypothesis:
///   below_threshold ~ P[i(X;Y) <= delta]
///   false_accept    ~ P[i(X;Y_pi') > delta], pi' = worst_case_transform.
struct TermEstimates {
  ErrorEstimate below_threshold;
  ErrorEstimate false_accept;
};
TermEstimates term_estimates(const Scenario& scenario, double delta, std::uint64_t trials,
                             std::uint64_t seed, unsigned threads = 1);

}  // namespace imreg
