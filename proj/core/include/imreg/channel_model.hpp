#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "imreg/info_measures.hpp"
#include "imreg/permutations.hpp"
#include "imreg/rng.hpp"

namespace imreg {

/// Scene prior P_R over [r].
class SourcePrior {
 public:
  explicit SourcePrior(std::vector<double> probs);

  std::size_t r() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Joint DMC W(x, y | r): one joint pmf over the two captured pixels for each
/// scene symbol.
class JointDMC {
 public:
  explicit JointDMC(std::vector<JointPMF> kernel);

  std::size_t r() const noexcept { return kernel_.size(); }
  std::size_t x_size() const noexcept { return kernel_.front().x_size(); }
  std::size_t y_size() const noexcept { return kernel_.front().y_size(); }
  const JointPMF& operator()(std::size_t r) const noexcept { return kernel_[r]; }
  const std::vector<JointPMF>& kernel() const noexcept { return kernel_; }

 private:
  std::vector<JointPMF> kernel_;
};

/// p(x, y) = sum_r P_R(r) W(x, y | r).
JointPMF induced_joint(const SourcePrior& prior, const JointDMC& w);

struct ChannelPair {
  SourcePrior prior;
  JointDMC dmc;
};

/// Uniform binary scene, X = R noiselessly and Y = R flipped with
/// probability delta. Throws PreconditionError for delta outside [0, 1].
ChannelPair bsc_pair(double delta);

/// The (X, Y) joint of bsc_pair(delta).
JointPMF bsc_joint(double delta);

/// Draws i.i.d. pixel pairs from (prior, dmc). Stream layout for trial t of
/// seed s: CounterRng(s, t); a family draw first (instances only), then for
/// each pixel one scene draw followed by one pixel-pair draw.
class PixelSampler {
 public:
  PixelSampler(const SourcePrior& prior, const JointDMC& dmc);

  /// n aligned pairs (X_i, Y_i) ~ p i.i.d. from the given stream.
  void draw(CounterRng& rng, std::size_t n, SymbolSeq& xs, SymbolSeq& ys) const;

 private:
  std::vector<double> prior_cdf_;
  std::vector<std::vector<double>> cell_cdf_;  // per scene symbol, row-major cells
  std::size_t y_size_;
};

/// Everything needed to draw registration instances.
class Scenario {
 public:
  Scenario(SourcePrior prior, JointDMC dmc, TransformationFamily family);

  const SourcePrior& prior() const noexcept { return prior_; }
  const JointDMC& dmc() const noexcept { return dmc_; }
  const TransformationFamily& family() const noexcept { return family_; }
  const JointPMF& joint() const noexcept { return joint_; }
  const PixelSampler& sampler() const noexcept { return sampler_; }
  std::size_t n() const noexcept { return family_.n(); }

 private:
  SourcePrior prior_;
  JointDMC dmc_;
  TransformationFamily family_;
  JointPMF joint_;
  PixelSampler sampler_;
};

/// One registration problem. ys[i] = Y_clean[true_pi(i)] and xs = X_clean, so
/// the correct registration is inverse(true_pi).
struct Instance {
  SymbolSeq xs;
  SymbolSeq ys;
  std::size_t true_index = 0;
  Permutation true_pi;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  std::size_t n() const noexcept { return xs.size(); }
};

/// Draws trial `trial` of `seed` into caller-owned buffers and returns the
/// family index of the true transformation. `scratch` receives the unpermuted
/// second image. Matches sample_instance draw for draw.
std::size_t sample_instance_into(const Scenario& scenario, std::uint64_t seed,
                                 std::uint64_t trial, SymbolSeq& xs, SymbolSeq& ys,
                                 SymbolSeq& scratch);

/// Deterministic in (scenario, seed, trial).
Instance sample_instance(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial = 0);
Instance sample_instance(const SourcePrior& prior, const JointDMC& w,
                         const TransformationFamily& family, std::size_t n, std::uint64_t seed,
                         std::uint64_t trial = 0);

}  // namespace imreg
