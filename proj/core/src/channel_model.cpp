#include "imreg/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "imreg/errors.hpp"

namespace imreg {

namespace {

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  return cdf;
}

// Index of the first cdf entry exceeding u, skipping zero-mass atoms.
std::size_t pick(const std::vector<double>& cdf, double u) {
  const double scaled = u * cdf.back();
  for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
    if (scaled < cdf[i]) return i;
  }
  std::size_t last = cdf.size() - 1;
  while (last > 0 && cdf[last] == cdf[last - 1]) --last;
  return last;
}

}  // namespace

SourcePrior::SourcePrior(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw ShapeError("source prior is empty");
  double total = 0.0;
  for (double v : probs_) {
    if (!std::isfinite(v) || v < 0.0) throw ValidationError("source prior entries must be >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("source prior does not sum to 1");
}

JointDMC::JointDMC(std::vector<JointPMF> kernel) : kernel_(std::move(kernel)) {
  if (kernel_.empty()) throw ShapeError("joint DMC kernel is empty");
  for (const auto& w : kernel_) {
    if (w.x_size() != kernel_.front().x_size() || w.y_size() != kernel_.front().y_size()) {
      throw ShapeError("joint DMC kernel matrices have inconsistent shapes");
    }
  }
}

JointPMF induced_joint(const SourcePrior& prior, const JointDMC& w) {
  if (prior.r() != w.r()) {
    throw ShapeError("induced_joint: prior over " + std::to_string(prior.r()) +
                     " symbols but kernel has " + std::to_string(w.r()) + " inputs");
  }
  std::vector<double> probs(w.x_size() * w.y_size(), 0.0);
  for (std::size_t r = 0; r < prior.r(); ++r) {
    const auto cell = w(r).probs();
    for (std::size_t c = 0; c < probs.size(); ++c) probs[c] += prior.probs()[r] * cell[c];
  }
  // Renormalise away accumulated rounding before validation.
  double total = 0.0;
  for (double v : probs) total += v;
  for (double& v : probs) v /= total;
  return JointPMF(w.x_size(), w.y_size(), std::move(probs));
}

ChannelPair bsc_pair(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw PreconditionError("bsc_pair: crossover must lie in [0, 1]");
  }
  std::vector<JointPMF> kernel;
  for (std::size_t r = 0; r < 2; ++r) {
    std::vector<double> cells(4, 0.0);
    cells[r * 2 + r] = 1.0 - delta;
    cells[r * 2 + (1 - r)] = delta;
    kernel.emplace_back(2, 2, std::move(cells));
  }
  return {SourcePrior({0.5, 0.5}), JointDMC(std::move(kernel))};
}

JointPMF bsc_joint(double delta) {
  const auto pair = bsc_pair(delta);
  return induced_joint(pair.prior, pair.dmc);
}

Scenario::Scenario(SourcePrior prior, JointDMC dmc, TransformationFamily family)
    : prior_(std::move(prior)),
      dmc_(std::move(dmc)),
      family_(std::move(family)),
      joint_(induced_joint(prior_, dmc_)),
      sampler_(prior_, dmc_) {}

PixelSampler::PixelSampler(const SourcePrior& prior, const JointDMC& dmc)
    : prior_cdf_(cumulative(prior.probs())), y_size_(dmc.y_size()) {
  if (prior.r() != dmc.r()) throw ShapeError("PixelSampler: prior and kernel sizes differ");
  cell_cdf_.reserve(dmc.r());
  for (const auto& w : dmc.kernel()) cell_cdf_.push_back(cumulative(w.probs()));
}

void PixelSampler::draw(CounterRng& rng, std::size_t n, SymbolSeq& xs, SymbolSeq& ys) const {
  xs.resize(n);
  ys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = pick(prior_cdf_, rng.uniform());
    const std::size_t cell = pick(cell_cdf_[r], rng.uniform());
    xs[i] = static_cast<Symbol>(cell / y_size_);
    ys[i] = static_cast<Symbol>(cell % y_size_);
  }
}

namespace {

std::size_t draw_into(const PixelSampler& sampler, const TransformationFamily& family,
                      std::uint64_t seed, std::uint64_t trial, SymbolSeq& xs, SymbolSeq& ys,
                      SymbolSeq& scratch) {
  CounterRng rng(seed, trial);
  const std::size_t index = static_cast<std::size_t>(rng.below(family.size()));
  const Permutation& pi = family[index];
  sampler.draw(rng, family.n(), xs, scratch);
  ys.resize(family.n());
  for (std::size_t i = 0; i < family.n(); ++i) ys[i] = scratch[pi(i)];
  return index;
}

Instance draw_instance(const PixelSampler& sampler, const TransformationFamily& family,
                       std::uint64_t seed, std::uint64_t trial) {
  SymbolSeq xs;
  SymbolSeq ys;
  SymbolSeq scratch;
  const std::size_t index = draw_into(sampler, family, seed, trial, xs, ys, scratch);
  return Instance{std::move(xs), std::move(ys), index, family[index], seed, trial};
}

}  // namespace

std::size_t sample_instance_into(const Scenario& scenario, std::uint64_t seed,
                                 std::uint64_t trial, SymbolSeq& xs, SymbolSeq& ys,
                                 SymbolSeq& scratch) {
  return draw_into(scenario.sampler(), scenario.family(), seed, trial, xs, ys, scratch);
}

Instance sample_instance(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial) {
  return draw_instance(scenario.sampler(), scenario.family(), seed, trial);
}

Instance sample_instance(const SourcePrior& prior, const JointDMC& w,
                         const TransformationFamily& family, std::size_t n, std::uint64_t seed,
                         std::uint64_t trial) {
  if (family.n() != n) {
    throw ShapeError("sample_instance: family acts on n = " + std::to_string(family.n()) +
                     " but n = " + std::to_string(n));
  }
  return draw_instance(PixelSampler(prior, w), family, seed, trial);
}

}  // namespace imreg
