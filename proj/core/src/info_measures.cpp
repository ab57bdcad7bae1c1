#include "imreg/info_measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "imreg/errors.hpp"

namespace imreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassTolerance = 1e-12;

void check_same_length(std::span<const Symbol> xs, std::span<const Symbol> ys) {
  if (xs.size() != ys.size()) {
    throw ShapeError("sequence length mismatch: " + std::to_string(xs.size()) + " vs " +
                     std::to_string(ys.size()));
  }
}

void check_alphabet(std::span<const Symbol> seq, std::size_t size, const char* which) {
  for (Symbol s : seq) {
    if (s >= size) {
      throw ShapeError(std::string("symbol ") + std::to_string(s) + " outside " + which +
                       " alphabet of size " + std::to_string(size));
    }
  }
}

// Tilted statistics of the information density under q_lambda ~ p e^{lambda i}.
struct Tilt {
  double log_partition;  // cgf(lambda)
  double mean;           // E_{q_lambda}[i]
  double variance;       // Var_{q_lambda}[i]
};

struct SupportCell {
  double log_p;
  double density;
};

std::vector<SupportCell> support_cells(const JointPMF& p) {
  std::vector<SupportCell> cells;
  auto px = p.marginal_x();
  auto py = p.marginal_y();
  for (std::size_t x = 0; x < p.x_size(); ++x) {
    for (std::size_t y = 0; y < p.y_size(); ++y) {
      const double pxy = p(x, y);
      if (pxy > 0.0) {
        cells.push_back({std::log(pxy), std::log(pxy / (px[x] * py[y]))});
      }
    }
  }
  return cells;
}

Tilt tilt(std::span<const SupportCell> cells, double lambda) {
  double peak = -kInf;
  for (const auto& c : cells) peak = std::max(peak, c.log_p + lambda * c.density);
  double z = 0.0;
  double first = 0.0;
  for (const auto& c : cells) {
    const double w = std::exp(c.log_p + lambda * c.density - peak);
    z += w;
    first += w * c.density;
  }
  const double mean = first / z;
  double second = 0.0;
  for (const auto& c : cells) {
    const double w = std::exp(c.log_p + lambda * c.density - peak);
    second += w * (c.density - mean) * (c.density - mean);
  }
  return {peak + std::log(z), mean, second / z};
}

}  // namespace

JointPMF::JointPMF(std::size_t x_size, std::size_t y_size, std::vector<double> probs)
    : x_size_(x_size), y_size_(y_size), probs_(std::move(probs)) {
  if (x_size_ < 2 || y_size_ < 2) {
    throw ShapeError("joint pmf alphabets must have size >= 2");
  }
  if (probs_.size() != x_size_ * y_size_) {
    throw ShapeError("joint pmf expects " + std::to_string(x_size_ * y_size_) +
                     " entries, got " + std::to_string(probs_.size()));
  }
  double total = 0.0;
  for (double v : probs_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("joint pmf entries must be finite and non-negative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw ValidationError("joint pmf mass " + std::to_string(total) + " is not 1");
  }
  marginal_x_.assign(x_size_, 0.0);
  marginal_y_.assign(y_size_, 0.0);
  for (std::size_t x = 0; x < x_size_; ++x) {
    for (std::size_t y = 0; y < y_size_; ++y) {
      marginal_x_[x] += probs_[x * y_size_ + y];
      marginal_y_[y] += probs_[x * y_size_ + y];
    }
  }
}

JointPMF JointPMF::uniform(std::size_t x_size, std::size_t y_size) {
  const double w = 1.0 / static_cast<double>(x_size * y_size);
  return JointPMF(x_size, y_size, std::vector<double>(x_size * y_size, w));
}

JointPMF JointPMF::product(std::span<const double> px, std::span<const double> py) {
  std::vector<double> probs;
  probs.reserve(px.size() * py.size());
  for (double a : px) {
    for (double b : py) probs.push_back(a * b);
  }
  return JointPMF(px.size(), py.size(), std::move(probs));
}

double JointPMF::at(std::size_t x, std::size_t y) const {
  if (x >= x_size_ || y >= y_size_) throw ShapeError("joint pmf index out of range");
  return (*this)(x, y);
}

JointPMF JointPMF::independent_coupling() const {
  return product(marginal_x_, marginal_y_);
}

double info_density(const JointPMF& p, Symbol x, Symbol y) {
  if (x >= p.x_size() || y >= p.y_size()) {
    throw ShapeError("info_density: symbol outside alphabet");
  }
  const double px = p.marginal_x()[x];
  const double py = p.marginal_y()[y];
  if (px <= 0.0 || py <= 0.0) {
    throw DegenerateError("info_density: zero marginal probability");
  }
  const double pxy = p(x, y);
  if (pxy <= 0.0) return -kInf;
  return std::log(pxy / (px * py));
}

InfoMoments moments(const JointPMF& p) {
  const auto cells = support_cells(p);
  InfoMoments m;
  for (std::size_t x = 0; x < p.x_size(); ++x) {
    for (std::size_t y = 0; y < p.y_size(); ++y) {
      const double pxy = p(x, y);
      if (pxy > 0.0) m.mi += pxy * info_density(p, static_cast<Symbol>(x), static_cast<Symbol>(y));
    }
  }
  for (const auto& c : cells) {
    const double d = c.density - m.mi;
    const double w = std::exp(c.log_p);
    m.dispersion += w * d * d;
    m.third_abs += w * std::abs(d) * d * d;
  }
  if (m.dispersion > kDegenerateDispersion) {
    m.b_be = 6.0 * m.third_abs / std::pow(m.dispersion, 1.5);
    m.b_ppv = 6.0 * m.third_abs / m.dispersion;
  }

  auto px = p.marginal_x();
  auto py = p.marginal_y();
  for (std::size_t x = 0; x < p.x_size(); ++x) {
    for (std::size_t y = 0; y < p.y_size(); ++y) {
      const double prod = px[x] * py[y];
      if (prod <= 0.0) continue;
      const double pxy = p(x, y);
      if (pxy <= 0.0) {
        m.lautum = kInf;
        return m;
      }
      m.lautum += prod * std::log(prod / pxy);
    }
  }
  return m;
}

double mutual_information(const JointPMF& p) {
  double mi = 0.0;
  auto px = p.marginal_x();
  auto py = p.marginal_y();
  for (std::size_t x = 0; x < p.x_size(); ++x) {
    for (std::size_t y = 0; y < p.y_size(); ++y) {
      const double pxy = p(x, y);
      if (pxy > 0.0) mi += pxy * std::log(pxy / (px[x] * py[y]));
    }
  }
  return mi;
}

double max_info_density(const JointPMF& p) {
  double best = -kInf;
  for (const auto& c : support_cells(p)) best = std::max(best, c.density);
  return best;
}

double sequence_info_density(const JointPMF& p, std::span<const Symbol> xs,
                             std::span<const Symbol> ys) {
  check_same_length(xs, ys);
  if (xs.empty()) throw ShapeError("sequence_info_density: empty sequences");
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) total += info_density(p, xs[i], ys[i]);
  return total;
}

JointPMF empirical_joint(std::span<const Symbol> xs, std::span<const Symbol> ys,
                         std::size_t x_size, std::size_t y_size) {
  check_same_length(xs, ys);
  if (xs.empty()) throw ShapeError("empirical_joint: empty sequences");
  check_alphabet(xs, x_size, "x");
  check_alphabet(ys, y_size, "y");
  std::vector<std::uint64_t> counts(x_size * y_size, 0);
  for (std::size_t i = 0; i < xs.size(); ++i) ++counts[xs[i] * y_size + ys[i]];
  const double n = static_cast<double>(xs.size());
  std::vector<double> probs(counts.size());
  std::transform(counts.begin(), counts.end(), probs.begin(),
                 [n](std::uint64_t c) { return static_cast<double>(c) / n; });
  return JointPMF(x_size, y_size, std::move(probs));
}

double mi_from_counts(std::span<const std::uint64_t> counts, std::size_t x_size,
                      std::size_t y_size) {
  if (counts.size() != x_size * y_size) throw ShapeError("mi_from_counts: table shape");
  std::vector<std::uint64_t> rows(x_size, 0);
  std::vector<std::uint64_t> cols(y_size, 0);
  std::uint64_t n = 0;
  for (std::size_t x = 0; x < x_size; ++x) {
    for (std::size_t y = 0; y < y_size; ++y) {
      const auto c = counts[x * y_size + y];
      rows[x] += c;
      cols[y] += c;
      n += c;
    }
  }
  if (n == 0) throw ShapeError("mi_from_counts: empty table");
  // Terms are summed in a canonical order so tables that differ by relabeling
  // or transposition score bit-identically.
  std::vector<std::array<std::uint64_t, 3>> terms;
  terms.reserve(counts.size());
  for (std::size_t x = 0; x < x_size; ++x) {
    for (std::size_t y = 0; y < y_size; ++y) {
      const auto c = counts[x * y_size + y];
      if (c == 0) continue;
      terms.push_back({c, std::min(rows[x], cols[y]), std::max(rows[x], cols[y])});
    }
  }
  std::sort(terms.begin(), terms.end());
  const double total = static_cast<double>(n);
  double mi = 0.0;
  for (const auto& [c, a, b] : terms) {
    const double cd = static_cast<double>(c);
    mi += cd * std::log(cd * total / (static_cast<double>(a) * static_cast<double>(b)));
  }
  return mi / total;
}

double empirical_mi(std::span<const Symbol> xs, std::span<const Symbol> ys,
                    std::size_t x_size, std::size_t y_size) {
  check_same_length(xs, ys);
  if (xs.empty()) throw ShapeError("empirical_mi: empty sequences");
  check_alphabet(xs, x_size, "x");
  check_alphabet(ys, y_size, "y");
  std::vector<std::uint64_t> counts(x_size * y_size, 0);
  for (std::size_t i = 0; i < xs.size(); ++i) ++counts[xs[i] * y_size + ys[i]];
  return mi_from_counts(counts, x_size, y_size);
}

double kl_divergence(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw ShapeError("kl_divergence: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    if (p[i] <= 0.0) throw SupportError("kl_divergence: q is not absolutely continuous w.r.t. p");
    d += q[i] * std::log(q[i] / p[i]);
  }
  return d;
}

double kl_divergence(const JointPMF& q, const JointPMF& p) {
  if (q.x_size() != p.x_size() || q.y_size() != p.y_size()) {
    throw ShapeError("kl_divergence: shape mismatch");
  }
  return kl_divergence(q.probs(), p.probs());
}

DensityMiResidual density_mi_residual(const JointPMF& p, std::span<const Symbol> xs,
                                      std::span<const Symbol> ys) {
  const JointPMF hat = empirical_joint(xs, ys, p.x_size(), p.y_size());
  const double d_joint = kl_divergence(hat, p);
  const double d_x = kl_divergence(hat.marginal_x(), p.marginal_x());
  const double d_y = kl_divergence(hat.marginal_y(), p.marginal_y());
  const double n = static_cast<double>(xs.size());
  DensityMiResidual r;
  r.lhs = empirical_mi(xs, ys, p.x_size(), p.y_size()) - sequence_info_density(p, xs, ys) / n;
  r.rhs = d_joint - d_x - d_y;
  return r;
}

double cgf(const JointPMF& p, double lambda) {
  if (!std::isfinite(lambda)) throw PreconditionError("cgf: lambda must be finite");
  const auto cells = support_cells(p);
  return tilt(cells, lambda).log_partition;
}

RateEval rate_function(const JointPMF& p, double t) {
  const auto cells = support_cells(p);
  const double mi = mutual_information(p);
  double top = -kInf;
  for (const auto& c : cells) top = std::max(top, c.density);

  constexpr double kTol = 1e-12;
  if (!std::isfinite(t)) throw PreconditionError("rate_function: threshold must be finite");
  if (t < mi - kTol) throw PreconditionError("rate_function: threshold below mutual information");
  if (t > top + kTol) {
    throw InfeasibleThreshold("rate_function: threshold " + std::to_string(t) +
                              " exceeds max information density " + std::to_string(top));
  }
  if (t <= mi) return {t, 0.0, 0.0, 0.0};
  if (t >= top - kTol) {
    // Limit lambda -> inf: the tilt collapses onto the cells attaining max i.
    double mass = 0.0;
    for (const auto& c : cells) {
      if (c.density >= top - kTol) mass += std::exp(c.log_p);
    }
    return {t, kInf, -std::log(mass), kInf};
  }

  auto objective = [&](double lambda) { return lambda * t - tilt(cells, lambda).log_partition; };

  // g(lambda) is concave with g'(lambda) = t - E_lambda[i], decreasing from
  // t - I > 0 towards t - max i < 0.
  double hi = 1.0;
  while (tilt(cells, hi).mean < t) {
    hi *= 2.0;
    if (hi > 1e15) break;
  }

  constexpr double kInvPhi = 0.6180339887498949;
  double a = 0.0;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > 1e-10 * std::max(1.0, b)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  double lambda = 0.5 * (a + b);

  // Newton polish on g'(lambda) = 0, kept inside the bracket.
  for (int iter = 0; iter < 20; ++iter) {
    const Tilt tl = tilt(cells, lambda);
    const double grad = t - tl.mean;
    if (tl.variance <= 0.0) break;
    const double next = std::clamp(lambda + grad / tl.variance, 0.0, hi);
    const double step = std::abs(next - lambda);
    lambda = next;
    if (step <= 1e-14 * std::max(1.0, lambda)) break;
  }
  const Tilt tl = tilt(cells, lambda);
  return {t, lambda, std::max(0.0, lambda * t - tl.log_partition), tl.log_partition};
}

}  // namespace imreg
