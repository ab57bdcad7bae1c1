#include "imreg/type_counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "imreg/errors.hpp"

namespace imreg {

namespace {

double entropy_bits(std::span<const std::uint64_t> counts, std::size_t n) {
  const double nn = static_cast<double>(n);
  double h = 0.0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    const double q = static_cast<double>(c) / nn;
    h -= q * std::log2(q);
  }
  return h;
}

// Visits every sequence of [r]^n in lexicographic order.
template <class Visit>
void for_each_sequence(std::size_t n, std::size_t r, Visit visit) {
  SymbolSeq s(n, 0);
  for (;;) {
    visit(static_cast<const SymbolSeq&>(s));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++s[i] < r) break;
      s[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

void delay_counts(std::span<const Symbol> xs, std::size_t k, std::size_t r,
                  std::vector<std::uint64_t>& out) {
  const std::size_t n = xs.size();
  out.assign(r * r, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + k < n ? i + k : i + k - n;
    ++out[xs[i] * r + xs[j]];
  }
}

void joint_delay_counts(std::span<const Symbol> xs, std::span<const Symbol> ys, std::size_t k,
                        std::size_t r_x, std::size_t r_y, std::vector<std::uint64_t>& out) {
  const std::size_t n = xs.size();
  out.assign(r_x * r_x * r_y, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + k < n ? i + k : i + k - n;
    ++out[(xs[i] * r_x + xs[j]) * r_y + ys[i]];
  }
}

void check_shift(std::size_t n, std::size_t k) {
  if (n == 0) throw ShapeError("sequence must be non-empty");
  if (k >= n) throw ShapeError("shift k must satisfy k < n");
}

void check_symbols(std::span<const Symbol> s, std::size_t r) {
  if (r < 2) throw ShapeError("alphabet size must be >= 2");
  for (Symbol v : s) {
    if (v >= r) throw ShapeError("symbol outside alphabet");
  }
}

}  // namespace

std::vector<std::uint64_t> DelayType::marginal_counts() const {
  std::vector<std::uint64_t> m(r, 0);
  for (std::size_t a0 = 0; a0 < r; ++a0) {
    for (std::size_t a1 = 0; a1 < r; ++a1) m[a0] += counts[a0 * r + a1];
  }
  return m;
}

double DelayType::pair_entropy() const { return entropy_bits(counts, n); }

double DelayType::marginal_entropy() const { return entropy_bits(marginal_counts(), n); }

double JointDelayType::triple_entropy() const { return entropy_bits(counts, n); }

double JointDelayType::pair_entropy() const {
  std::vector<std::uint64_t> pairs(r_x * r_x, 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t b = 0; b < r_y; ++b) pairs[p] += counts[p * r_y + b];
  }
  return entropy_bits(pairs, n);
}

std::size_t shift_cycle_count(std::size_t n, std::size_t k) {
  check_shift(n, k);
  return k == 0 ? n : std::gcd(n, k);
}

std::size_t max_cycle_count(const TransformationFamily& family) {
  std::size_t best = 0;
  for (const auto& member : family) {
    if (member.is_identity()) continue;
    best = std::max(best, cycle_decomposition(member).num_cycles);
  }
  if (best == 0) throw PreconditionError("max_cycle_count: family holds only the identity");
  return best;
}

DelayType delay_type_of(std::span<const Symbol> xs, std::size_t k, std::size_t r) {
  check_shift(xs.size(), k);
  check_symbols(xs, r);
  DelayType q{xs.size(), k, r, {}};
  delay_counts(xs, k, r, q.counts);
  return q;
}

JointDelayType joint_delay_type_of(std::span<const Symbol> xs, std::span<const Symbol> ys,
                                   std::size_t k, std::size_t r_x, std::size_t r_y) {
  if (xs.size() != ys.size()) throw ShapeError("joint_delay_type_of: sequence lengths differ");
  check_shift(xs.size(), k);
  check_symbols(xs, r_x);
  check_symbols(ys, r_y);
  JointDelayType q{xs.size(), k, r_x, r_y, {}};
  joint_delay_counts(xs, ys, k, r_x, r_y, q.counts);
  return q;
}

std::vector<std::uint64_t> type_of(std::span<const Symbol> xs, std::size_t r) {
  check_symbols(xs, r);
  std::vector<std::uint64_t> t(r, 0);
  for (Symbol v : xs) ++t[v];
  return t;
}

void check_budget(std::size_t n, std::size_t r, std::uint64_t budget) {
  double total = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<double>(r);
    if (total > static_cast<double>(budget)) {
      throw BudgetError("enumeration of r^n sequences exceeds the budget");
    }
  }
}

std::uint64_t exact_type_class_size(const DelayType& q, std::uint64_t budget) {
  check_shift(q.n, q.k);
  if (q.counts.size() != q.r * q.r) throw ShapeError("delay type must be r x r");
  check_budget(q.n, q.r, budget);
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> scratch;
  for_each_sequence(q.n, q.r, [&](const SymbolSeq& s) {
    delay_counts(s, q.k, q.r, scratch);
    hits += (scratch == q.counts);
  });
  return hits;
}

std::uint64_t exact_type_class_size(std::size_t n, std::size_t r, std::size_t k,
                                    std::span<const double> q, std::uint64_t budget) {
  if (q.size() != r * r) throw ShapeError("delay type must be r x r");
  DelayType t{n, k, r, std::vector<std::uint64_t>(r * r, 0)};
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < q.size(); ++c) {
    const double scaled = q[c] * static_cast<double>(n);
    const double rounded = std::round(scaled);
    if (!(q[c] >= 0.0) || std::abs(scaled - rounded) > 1e-9) return 0;
    t.counts[c] = static_cast<std::uint64_t>(rounded);
    total += t.counts[c];
  }
  if (total != n) return 0;
  return exact_type_class_size(t, budget);
}

std::uint64_t exact_marginal_class_size(std::size_t n, std::size_t r,
                                        std::span<const std::uint64_t> type_counts,
                                        std::uint64_t budget) {
  if (type_counts.size() != r) throw ShapeError("type must have r entries");
  const auto census = marginal_type_census(n, r, budget);
  const auto it = census.find(std::vector<std::uint64_t>(type_counts.begin(), type_counts.end()));
  return it == census.end() ? 0 : it->second;
}

std::map<std::vector<std::uint64_t>, std::uint64_t> delay_type_census(std::size_t n,
                                                                      std::size_t r,
                                                                      std::size_t k,
                                                                      std::uint64_t budget) {
  check_shift(n, k);
  if (r < 2) throw ShapeError("alphabet size must be >= 2");
  check_budget(n, r, budget);
  std::map<std::vector<std::uint64_t>, std::uint64_t> census;
  std::vector<std::uint64_t> scratch;
  for_each_sequence(n, r, [&](const SymbolSeq& s) {
    delay_counts(s, k, r, scratch);
    ++census[scratch];
  });
  return census;
}

std::map<std::vector<std::uint64_t>, std::uint64_t> marginal_type_census(std::size_t n,
                                                                         std::size_t r,
                                                                         std::uint64_t budget) {
  if (n == 0) throw ShapeError("sequence must be non-empty");
  if (r < 2) throw ShapeError("alphabet size must be >= 2");
  check_budget(n, r, budget);
  std::map<std::vector<std::uint64_t>, std::uint64_t> census;
  std::vector<std::uint64_t> t(r);
  for_each_sequence(n, r, [&](const SymbolSeq& s) {
    std::fill(t.begin(), t.end(), 0);
    for (Symbol v : s) ++t[v];
    ++census[t];
  });
  return census;
}

std::map<std::vector<std::uint64_t>, std::uint64_t> conditional_type_census(
    std::span<const Symbol> xs, std::size_t k, std::size_t r_x, std::size_t r_y,
    std::uint64_t budget) {
  check_shift(xs.size(), k);
  check_symbols(xs, r_x);
  if (r_y < 2) throw ShapeError("alphabet size must be >= 2");
  check_budget(xs.size(), r_y, budget);
  std::map<std::vector<std::uint64_t>, std::uint64_t> census;
  std::vector<std::uint64_t> scratch;
  for_each_sequence(xs.size(), r_y, [&](const SymbolSeq& ys) {
    joint_delay_counts(xs, ys, k, r_x, r_y, scratch);
    ++census[scratch];
  });
  return census;
}

std::uint64_t exact_conditional_class_size(std::span<const Symbol> xs, const JointDelayType& q,
                                           std::uint64_t budget) {
  if (xs.size() != q.n) throw ShapeError("conditioning sequence length differs from n");
  const auto census = conditional_type_census(xs, q.k, q.r_x, q.r_y, budget);
  const auto it = census.find(q.counts);
  return it == census.end() ? 0 : it->second;
}

Log2Bounds type0_bounds(std::size_t n, std::span<const std::uint64_t> type_counts) {
  if (n == 0) throw ShapeError("sequence must be non-empty");
  const std::uint64_t total = std::accumulate(type_counts.begin(), type_counts.end(), std::uint64_t{0});
  if (total != n) throw ValidationError("type counts must sum to n");
  const double nh = static_cast<double>(n) * entropy_bits(type_counts, n);
  const double r = static_cast<double>(type_counts.size());
  return {nh - r * std::log2(static_cast<double>(n) + 1.0), nh};
}

Log2Bounds whittle_bounds(const DelayType& q) {
  if (q.k != 1 || q.n < 2) throw ValidationError("whittle_bounds: q must be a first-order (k = 1) type");
  if (q.counts.size() != q.r * q.r) throw ShapeError("delay type must be r x r");
  const std::uint64_t total = std::accumulate(q.counts.begin(), q.counts.end(), std::uint64_t{0});
  if (total != q.n) throw ValidationError("whittle_bounds: counts must sum to n");
  for (std::size_t a = 0; a < q.r; ++a) {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    for (std::size_t b = 0; b < q.r; ++b) {
      row += q.counts[a * q.r + b];
      col += q.counts[b * q.r + a];
    }
    if (row != col) throw ValidationError("whittle_bounds: row and column marginals differ");
  }
  const double r = static_cast<double>(q.r);
  const double ub =
      std::log2(r) + static_cast<double>(q.n) * (q.pair_entropy() - q.marginal_entropy());
  return {ub - (r * r + r) * std::log2(static_cast<double>(q.n) + 1.0), ub};
}

Log2Bounds conditional_markov_bounds(const JointDelayType& q) {
  const double ub = static_cast<double>(q.n) * (q.triple_entropy() - q.pair_entropy());
  const double rx = static_cast<double>(q.r_x);
  const double ry = static_cast<double>(q.r_y);
  return {ub - rx * rx * ry * std::log2(static_cast<double>(q.n) + 1.0), ub};
}

TypeCountReport lemma5_bounds(const DelayType& q, std::uint64_t budget) {
  TypeCountReport rep;
  rep.n = q.n;
  rep.r = q.r;
  rep.k = q.k;
  rep.kappa = shift_cycle_count(q.n, q.k);
  const double kappa = static_cast<double>(rep.kappa);
  const double r = static_cast<double>(q.r);
  rep.center = static_cast<double>(q.n) * (q.pair_entropy() - q.marginal_entropy()) +
               kappa * std::log2(r);
  rep.half_width = kappa * r * r * std::log2(1.0 + static_cast<double>(q.n) / kappa);
  rep.analytic_lb = rep.center - rep.half_width;
  rep.analytic_ub = rep.center + rep.half_width;
  try {
    rep.exact_count = exact_type_class_size(q, budget);
  } catch (const BudgetError&) {
    rep.budget_skipped = true;
    return rep;
  }
  if (*rep.exact_count > 0) {
    rep.exact_log2_size = std::log2(static_cast<double>(*rep.exact_count));
    rep.in_band = Log2Bounds{rep.analytic_lb, rep.analytic_ub}.contains(*rep.exact_log2_size);
  }
  return rep;
}

TypeCountReport lemma6_bounds(std::span<const Symbol> xs, const JointDelayType& q,
                              std::uint64_t budget) {
  if (xs.size() != q.n) throw ShapeError("conditioning sequence length differs from n");
  TypeCountReport rep;
  rep.n = q.n;
  rep.r = std::max(q.r_x, q.r_y);
  rep.k = q.k;
  rep.kappa = shift_cycle_count(q.n, q.k);
  const double kappa = static_cast<double>(rep.kappa);
  const double r = static_cast<double>(rep.r);
  rep.center = static_cast<double>(q.n) * (q.triple_entropy() - q.pair_entropy());
  rep.half_width = kappa * r * r * r * std::log2(1.0 + static_cast<double>(q.n) / kappa);
  rep.analytic_lb = rep.center;
  rep.analytic_ub = rep.center + rep.half_width;
  try {
    rep.exact_count = exact_conditional_class_size(xs, q, budget);
  } catch (const BudgetError&) {
    rep.budget_skipped = true;
    return rep;
  }
  if (*rep.exact_count > 0) {
    rep.exact_log2_size = std::log2(static_cast<double>(*rep.exact_count));
    rep.in_band = Log2Bounds{rep.analytic_lb, rep.analytic_ub}.contains(*rep.exact_log2_size);
  }
  return rep;
}

ExponentGapReport exponent_gap_bound(std::size_t n, std::size_t kappa, std::size_t r,
                                     std::optional<double> e_star) {
  if (n < 1 || kappa < 1 || kappa > n) throw PreconditionError("exponent_gap_bound: need 1 <= kappa <= n");
  if (r < 2) throw PreconditionError("exponent_gap_bound: need r >= 2");
  ExponentGapReport g;
  g.n = n;
  g.kappa = kappa;
  g.r = r;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(kappa);
  const double rr = static_cast<double>(r);
  const double per_cycle = kk / nn * std::log2(1.0 + nn / kk);

  g.cycle_term = per_cycle * rr * rr * (rr + 2.0);
  g.type_count_term = rr * rr * rr * std::log2(1.0 + nn) / nn;
  g.union_term = std::log2(kk) / nn;
  g.gap_upper = g.cycle_term + g.type_count_term + g.union_term;

  g.mmi_lower_correction = per_cycle * rr * rr * (rr + 1.0) + g.type_count_term +
                           kk / nn * std::log2(rr) + g.union_term;
  g.ml_upper_correction = per_cycle * rr * rr - kk / nn * std::log2(rr);
  g.vacuous = g.gap_upper >= std::log2(rr);
  if (e_star) {
    g.e_star = e_star;
    g.mmi_exponent_lower = *e_star - g.mmi_lower_correction;
    g.ml_exponent_upper = *e_star + g.ml_upper_correction;
  }
  return g;
}

GapEstimate empirical_gap(const Scenario& scenario, std::uint64_t trials, std::uint64_t seed,
                          unsigned threads, DecoderSpec first, DecoderSpec second,
                          std::uint64_t min_errors) {
  const DecoderSpec specs[] = {first, second};
  const JointErrorCounts counts = monte_carlo_joint(specs, scenario, trials, seed, threads);
  if (counts.errors[0] < min_errors || counts.errors[1] < min_errors) {
    throw InsufficientDataError(
        "empirical_gap: too few errors; increase trials or use a noisier channel");
  }
  GapEstimate g;
  g.n = scenario.n();
  g.first = wilson_estimate(counts.errors[0], trials);
  g.second = wilson_estimate(counts.errors[1], trials);
  g.both_errors = counts.both[0][1];

  const double t = static_cast<double>(trials);
  const double pa = g.first.p_hat;
  const double pb = g.second.p_hat;
  const double pab = static_cast<double>(g.both_errors) / t;
  const double nn = static_cast<double>(g.n);
  g.gap_hat = (std::log2(pa) - std::log2(pb)) / nn;
  // Delta method on (log pa, log pb) with the multinomial covariance.
  const double var_log = (1.0 - pa) / (pa * t) + (1.0 - pb) / (pb * t) -
                         2.0 * (pab - pa * pb) / (pa * pb * t);
  g.gap_se = std::sqrt(std::max(0.0, var_log)) / (nn * std::numbers::ln2);
  g.gap_ci = 1.959963984540054 * g.gap_se;
  return g;
}

}  // namespace imreg
