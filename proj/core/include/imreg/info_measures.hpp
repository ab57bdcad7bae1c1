#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace imreg {

using Symbol = std::uint32_t;
using SymbolSeq = std::vector<Symbol>;

/// Finite joint distribution p(x, y) over [x_size] x [y_size] with cached
/// marginals. Entries are stored row-major (x is the row index).
///
/// Construction validates: non-negative entries, total mass within 1e-12 of
/// one, both alphabets of size >= 2. Instances are immutable afterwards.
class JointPMF {
 public:
  JointPMF(std::size_t x_size, std::size_t y_size, std::vector<double> probs);

  /// Uniform distribution on the x_size * y_size grid.
  static JointPMF uniform(std::size_t x_size, std::size_t y_size);
  /// Product of two marginals.
  static JointPMF product(std::span<const double> px, std::span<const double> py);

  std::size_t x_size() const noexcept { return x_size_; }
  std::size_t y_size() const noexcept { return y_size_; }
  std::size_t cells() const noexcept { return probs_.size(); }

  double operator()(std::size_t x, std::size_t y) const noexcept {
    return probs_[x * y_size_ + y];
  }
  /// Bounds-checked access; throws ShapeError.
  double at(std::size_t x, std::size_t y) const;

  std::span<const double> probs() const noexcept { return probs_; }
  std::span<const double> marginal_x() const noexcept { return marginal_x_; }
  std::span<const double> marginal_y() const noexcept { return marginal_y_; }

  /// Product of this distribution's own marginals.
  JointPMF independent_coupling() const;

  bool operator==(const JointPMF&) const = default;

 private:
  std::size_t x_size_;
  std::size_t y_size_;
  std::vector<double> probs_;
  std::vector<double> marginal_x_;
  std::vector<double> marginal_y_;
};

/// Moments of the information density, all in nats.
struct InfoMoments {
  double mi = 0.0;          // E[i]
  double dispersion = 0.0;  // E[(i - I)^2]
  double third_abs = 0.0;   // E[|i - I|^3]
  // Berry-Esseen constant 6T / V^{3/2}; empty when the dispersion vanishes.
  std::optional<double> b_be;
  // Constant 6T / V used by the derangement tail term; empty likewise.
  std::optional<double> b_ppv;
  // KL(p_X p_Y || p_XY); +inf when the product puts mass outside supp(p).
  double lautum = 0.0;

  bool degenerate() const noexcept { return !b_be.has_value(); }
};

/// Dispersions at or below this level are treated as zero.
inline constexpr double kDegenerateDispersion = 1e-12;

/// Result of the Legendre transform of the information-density CGF at a
/// per-sample threshold t.
struct RateEval {
  double threshold_t = 0.0;
  // Optimal tilt; +inf when t equals the largest information density.
  double lambda_star = 0.0;
  double rate = 0.0;
  double cgf_at_lambda = 0.0;
};

/// log(p(x,y) / (p_X(x) p_Y(y))). Returns -inf on a zero cell with positive
/// marginals. Throws ShapeError for out-of-range symbols and DegenerateError
/// when either marginal is zero.
double info_density(const JointPMF& p, Symbol x, Symbol y);

/// Exact moment bundle by summation over the support of p.
InfoMoments moments(const JointPMF& p);

/// Mutual information in nats, with 0 log 0 := 0.
double mutual_information(const JointPMF& p);

/// Largest information density over the support of p.
double max_info_density(const JointPMF& p);

/// Sum of info_density over aligned pairs (xs[i], ys[i]).
double sequence_info_density(const JointPMF& p, std::span<const Symbol> xs,
                             std::span<const Symbol> ys);

/// Empirical joint distribution of the pairs. Unseen symbols keep explicit
/// zero rows/columns.
JointPMF empirical_joint(std::span<const Symbol> xs, std::span<const Symbol> ys,
                         std::size_t x_size, std::size_t y_size);

double empirical_mi(std::span<const Symbol> xs, std::span<const Symbol> ys,
                    std::size_t x_size, std::size_t y_size);

/// Mutual information of a contingency table of counts (row-major).
double mi_from_counts(std::span<const std::uint64_t> counts, std::size_t x_size,
                      std::size_t y_size);

/// D(q || p) in nats. Throws SupportError when q puts mass where p has none.
double kl_divergence(const JointPMF& q, const JointPMF& p);
double kl_divergence(std::span<const double> q, std::span<const double> p);

/// Both sides of the empirical-MI / information-density identity:
///   lhs = I_hat - (1/n) i(x^n; y^n)
///   rhs = D(P_hat || P) - D(P_hat_X || P_X) - D(P_hat_Y || P_Y)
struct DensityMiResidual {
  double lhs = 0.0;
  double rhs = 0.0;
};
DensityMiResidual density_mi_residual(const JointPMF& p, std::span<const Symbol> xs,
                                      std::span<const Symbol> ys);

/// log E_p[exp(lambda * i(X;Y))], evaluated with log-sum-exp.
double cgf(const JointPMF& p, double lambda);

/// sup_{lambda >= 0} lambda t - cgf(lambda) for I(p) <= t <= max i.
/// Throws InfeasibleThreshold for t above the largest information density and
/// PreconditionError for t below the mutual information.
RateEval rate_function(const JointPMF& p, double t);

}  // namespace imreg
