#include "imreg/decoders.hpp"

#include <cmath>
#include <limits>

#include <algorithm>

#include "imreg/errors.hpp"
#include "parallel.hpp"

namespace imreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative margin a later member needs to displace the incumbent.
constexpr double kTieTolerance = 1e-12;

bool beats(double score, double best) {
  if (std::isinf(best) || std::isinf(score)) return score > best;
  return score > best + kTieTolerance * std::max(1.0, std::fabs(best));
}
constexpr double kWilsonZ = 1.959963984540054;

void check_inputs(std::span<const Symbol> xs, std::span<const Symbol> ys,
                  const TransformationFamily& family, std::size_t x_size, std::size_t y_size) {
  if (xs.size() != ys.size()) throw ShapeError("decoder: sequence lengths differ");
  if (xs.size() != family.n()) throw ShapeError("decoder: sequences do not match family n");
  for (Symbol s : xs) {
    if (s >= x_size) throw ShapeError("decoder: x symbol outside alphabet");
  }
  for (Symbol s : ys) {
    if (s >= y_size) throw ShapeError("decoder: y symbol outside alphabet");
  }
}

// Pair counts of (xs[i], ys[pi(i)]).
void align_counts(std::span<const Symbol> xs, std::span<const Symbol> ys, const Permutation& pi,
                  std::size_t y_size, std::vector<std::uint64_t>& counts) {
  std::fill(counts.begin(), counts.end(), 0);
  const auto& m = pi.mapping();
  for (std::size_t i = 0; i < xs.size(); ++i) ++counts[xs[i] * y_size + ys[m[i]]];
}

// sum over occupied cells of count * weight, in fixed cell order, so equal
// count tables always give bit-identical scores.
double table_score(const std::vector<std::uint64_t>& counts, const std::vector<double>& weight) {
  double s = 0.0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] != 0) s += static_cast<double>(counts[c]) * weight[c];
  }
  return s;
}

std::vector<double> log_conditional_table(const JointPMF& p, std::span<const Symbol> xs) {
  const auto px = p.marginal_x();
  for (Symbol x : xs) {
    if (px[x] <= 0.0) throw DegenerateError("ml_decode: conditional W(.|x) undefined for x");
  }
  std::vector<double> table(p.cells(), -kInf);
  for (std::size_t x = 0; x < p.x_size(); ++x) {
    for (std::size_t y = 0; y < p.y_size(); ++y) {
      if (px[x] > 0.0 && p(x, y) > 0.0) table[x * p.y_size() + y] = std::log(p(x, y) / px[x]);
    }
  }
  return table;
}

std::vector<double> density_table(const JointPMF& p, std::span<const Symbol> xs,
                                  std::span<const Symbol> ys) {
  const auto px = p.marginal_x();
  const auto py = p.marginal_y();
  for (Symbol x : xs) {
    if (px[x] <= 0.0) throw DegenerateError("information density undefined: zero x-marginal");
  }
  for (Symbol y : ys) {
    if (py[y] <= 0.0) throw DegenerateError("information density undefined: zero y-marginal");
  }
  std::vector<double> table(p.cells(), -kInf);
  for (std::size_t x = 0; x < p.x_size(); ++x) {
    for (std::size_t y = 0; y < p.y_size(); ++y) {
      if (px[x] > 0.0 && py[y] > 0.0) {
        table[x * p.y_size() + y] =
            info_density(p, static_cast<Symbol>(x), static_cast<Symbol>(y));
      }
    }
  }
  return table;
}

}  // namespace

DecodeResult ml_decode(const JointPMF& p, std::span<const Symbol> xs, std::span<const Symbol> ys,
                       const TransformationFamily& family) {
  check_inputs(xs, ys, family, p.x_size(), p.y_size());
  const auto table = log_conditional_table(p, xs);
  std::vector<std::uint64_t> counts(p.cells());
  DecodeResult best;
  for (std::size_t k = 0; k < family.size(); ++k) {
    align_counts(xs, ys, family[k], p.y_size(), counts);
    const double score = table_score(counts, table);
    if (!best.index || beats(score, best.score)) {
      best.index = k;
      best.score = score;
    }
  }
  best.all_scores_infinite = (best.score == -kInf);
  return best;
}

DecodeResult mmi_decode(std::span<const Symbol> xs, std::span<const Symbol> ys,
                        const TransformationFamily& family, std::size_t x_size,
                        std::size_t y_size) {
  check_inputs(xs, ys, family, x_size, y_size);
  std::vector<std::uint64_t> counts(x_size * y_size);
  DecodeResult best;
  for (std::size_t k = 0; k < family.size(); ++k) {
    align_counts(xs, ys, family[k], y_size, counts);
    const double score = mi_from_counts(counts, x_size, y_size);
    if (!best.index || beats(score, best.score)) {
      best.index = k;
      best.score = score;
    }
  }
  return best;
}

DecodeResult feinstein_decode(const JointPMF& p, std::span<const Symbol> xs,
                              std::span<const Symbol> ys, const TransformationFamily& family,
                              double delta) {
  check_inputs(xs, ys, family, p.x_size(), p.y_size());
  const auto table = density_table(p, xs, ys);
  std::vector<std::uint64_t> counts(p.cells());
  DecodeResult result;
  result.threshold_used = delta;
  result.score = -kInf;
  for (std::size_t k = 0; k < family.size(); ++k) {
    align_counts(xs, ys, family[k], p.y_size(), counts);
    const double score = table_score(counts, table);
    if (score >= delta) {
      result.index = k;
      result.score = score;
      return result;
    }
    result.score = std::max(result.score, score);
  }
  return result;
}

LrtEquivalence lrt_equivalence_check(const JointPMF& p, std::span<const Symbol> xs,
                                     std::span<const Symbol> ys, const Permutation& pi) {
  if (xs.size() != ys.size() || xs.size() != pi.size()) {
    throw ShapeError("lrt_equivalence_check: sizes differ");
  }
  for (double v : p.probs()) {
    if (v <= 0.0) throw SupportError("lrt_equivalence_check: p must have full support");
  }
  SymbolSeq aligned(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) aligned[i] = ys[pi(i)];

  LrtEquivalence out;
  out.lhs = sequence_info_density(p, xs, aligned);
  double log_likelihood = 0.0;
  double offset = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    log_likelihood += std::log(p.at(xs[i], aligned[i]));
    offset -= std::log(p.marginal_x()[xs[i]]);
    offset -= std::log(p.marginal_y()[ys[i]]);
  }
  out.rhs = log_likelihood + offset;
  return out;
}

double ErrorEstimate::sigma() const noexcept {
  if (trials == 0) return 0.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

ErrorEstimate wilson_estimate(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) throw PreconditionError("wilson_estimate: trials must be >= 1");
  if (errors > trials) throw PreconditionError("wilson_estimate: errors exceed trials");
  ErrorEstimate e;
  e.trials = trials;
  e.errors = errors;
  const double t = static_cast<double>(trials);
  e.p_hat = static_cast<double>(errors) / t;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / t;
  const double center = (e.p_hat + z2 / (2.0 * t)) / denom;
  const double half =
      kWilsonZ / denom * std::sqrt(e.p_hat * (1.0 - e.p_hat) / t + z2 / (4.0 * t * t));
  e.ci_low = std::min(e.p_hat, std::max(0.0, center - half));
  e.ci_high = std::max(e.p_hat, std::min(1.0, center + half));
  return e;
}

std::string to_string(DecoderKind kind) {
  switch (kind) {
    case DecoderKind::kML:
      return "ml";
    case DecoderKind::kMMI:
      return "mmi";
    case DecoderKind::kFeinstein:
      return "feinstein";
  }
  return "unknown";
}

DecoderKind parse_decoder_kind(const std::string& name) {
  if (name == "ml") return DecoderKind::kML;
  if (name == "mmi") return DecoderKind::kMMI;
  if (name == "feinstein") return DecoderKind::kFeinstein;
  throw PreconditionError("unknown decoder '" + name + "'");
}

TrialDecoder::TrialDecoder(DecoderSpec spec, const Scenario& scenario)
    : spec_(spec), scenario_(&scenario) {
  const auto& family = scenario.family();
  inverse_index_.reserve(family.size());
  for (const auto& member : family) inverse_index_.push_back(family.index_of(inverse(member)));
}

DecodeResult TrialDecoder::decode(std::span<const Symbol> xs, std::span<const Symbol> ys) const {
  const auto& p = scenario_->joint();
  switch (spec_.kind) {
    case DecoderKind::kML:
      return ml_decode(p, xs, ys, scenario_->family());
    case DecoderKind::kMMI:
      return mmi_decode(xs, ys, scenario_->family(), p.x_size(), p.y_size());
    case DecoderKind::kFeinstein:
      return feinstein_decode(p, xs, ys, scenario_->family(), spec_.delta);
  }
  return {};
}

bool TrialDecoder::is_error(const DecodeResult& result, std::size_t true_index) const {
  const auto& expected = inverse_index_[true_index];
  return !result.index || !expected || *result.index != *expected;
}

ErrorEstimate monte_carlo_error(const DecoderSpec& spec, const Scenario& scenario,
                                std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  const DecoderSpec one[] = {spec};
  const auto joint = monte_carlo_joint(one, scenario, trials, seed, threads);
  return wilson_estimate(joint.errors[0], trials);
}

JointErrorCounts monte_carlo_joint(std::span<const DecoderSpec> specs, const Scenario& scenario,
                                   std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw PreconditionError("monte_carlo: trials must be >= 1");
  std::vector<TrialDecoder> decoders;
  for (const auto& s : specs) decoders.emplace_back(s, scenario);
  const std::size_t k = decoders.size();

  JointErrorCounts init;
  init.errors.assign(k, 0);
  init.both.assign(k, std::vector<std::uint64_t>(k, 0));

  auto body = [&](std::uint64_t begin, std::uint64_t end, JointErrorCounts& acc) {
    SymbolSeq xs;
    SymbolSeq ys;
    SymbolSeq scratch;
    std::vector<char> wrong(k);
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::size_t truth = sample_instance_into(scenario, seed, t, xs, ys, scratch);
      for (std::size_t d = 0; d < k; ++d) {
        wrong[d] = decoders[d].is_error(decoders[d].decode(xs, ys), truth);
        acc.errors[d] += wrong[d];
      }
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) acc.both[a][b] += (wrong[a] && wrong[b]);
      }
    }
  };
  auto merge = [k](JointErrorCounts& total, const JointErrorCounts& part) {
    for (std::size_t a = 0; a < k; ++a) {
      total.errors[a] += part.errors[a];
      for (std::size_t b = 0; b < k; ++b) total.both[a][b] += part.both[a][b];
    }
  };
  auto out = detail::parallel_chunks(trials, threads, init, body, merge);
  out.trials = trials;
  return out;
}

TermEstimates term_estimates(const Scenario& scenario, double delta, std::uint64_t trials,
                             std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw PreconditionError("term_estimates: trials must be >= 1");
  const Permutation& worst = worst_case_transform(scenario.family());
  const Permutation identity = Permutation::identity(scenario.n());
  const JointPMF& p = scenario.joint();
  // Sampled symbols always have positive marginals.
  const auto table = density_table(p, {}, {});

  struct Counts {
    std::uint64_t below = 0;
    std::uint64_t above = 0;
  };
  auto body = [&](std::uint64_t begin, std::uint64_t end, Counts& acc) {
    SymbolSeq xs;
    SymbolSeq ys;
    std::vector<std::uint64_t> counts(p.cells());
    for (std::uint64_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      scenario.sampler().draw(rng, scenario.n(), xs, ys);
      align_counts(xs, ys, identity, p.y_size(), counts);
      acc.below += (table_score(counts, table) <= delta);
      align_counts(xs, ys, worst, p.y_size(), counts);
      acc.above += (table_score(counts, table) > delta);
    }
  };
  auto merge = [](Counts& total, const Counts& part) {
    total.below += part.below;
    total.above += part.above;
  };
  const Counts c = detail::parallel_chunks(trials, threads, Counts{}, body, merge);
  return {wilson_estimate(c.below, trials), wilson_estimate(c.above, trials)};
}

}  // namespace imreg
