#include "imreg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "imreg/errors.hpp"

namespace imreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gaussian_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

// 6 sqrt(3) (log 2 / sqrt(2 pi) + 2 B)
double derangement_constant(double b_ppv) {
  return 6.0 * std::sqrt(3.0) * (std::numbers::ln2 / std::sqrt(2.0 * std::numbers::pi) + 2.0 * b_ppv);
}

const InfoMoments& require_dispersion(const InfoMoments& mom) {
  if (mom.degenerate()) throw DegenerateError("bound undefined: information dispersion is zero");
  return mom;
}

}  // namespace

double q_function(double tau) {
  if (std::isnan(tau)) throw PreconditionError("q_function: tau is NaN");
  return 0.5 * std::erfc(tau / std::numbers::sqrt2);
}

double q_inverse(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("q_inverse: eps must lie in (0, 1)");
  double lo = -40.0;
  double hi = 40.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (q_function(mid) > eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double tau = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double pdf = gaussian_pdf(tau);
    if (pdf <= 0.0) break;
    const double next = std::clamp(tau + (q_function(tau) - eps) / pdf, lo, hi);
    const bool done = std::abs(next - tau) <= 1e-15 * std::max(1.0, std::abs(tau));
    tau = next;
    if (done) break;
  }
  return tau;
}

ProbabilityBound make_bound(double raw) {
  ProbabilityBound b;
  b.raw = raw;
  b.value = std::clamp(raw, 0.0, 1.0);
  b.vacuous = raw >= 1.0;
  b.log_raw = raw > 0.0 ? std::log(raw) : -kInf;
  return b;
}

ProbabilityBound make_bound_from_log(double log_raw) {
  ProbabilityBound b = make_bound(std::exp(log_raw));
  b.log_raw = log_raw;
  b.vacuous = log_raw >= 0.0;
  return b;
}

ProbabilityBound berry_esseen_cdf_bound(const InfoMoments& mom, std::uint64_t n, double delta) {
  require_dispersion(mom);
  if (n == 0) throw PreconditionError("berry_esseen_cdf_bound: n must be >= 1");
  const double nn = static_cast<double>(n);
  const double tau = (nn * mom.mi - delta) / std::sqrt(nn * mom.dispersion);
  return make_bound(q_function(tau) + *mom.b_be / std::sqrt(nn));
}

ProbabilityBound sanov_tail_bound(const JointPMF& p, std::uint64_t n, double t) {
  const RateEval r = rate_function(p, t);
  const double nn = static_cast<double>(n);
  const double k = static_cast<double>(p.cells());
  return make_bound_from_log(k * std::log(nn + 1.0) - nn * r.rate);
}

ProbabilityBound derangement_tail_bound(const InfoMoments& mom, std::uint64_t n, double delta) {
  require_dispersion(mom);
  if (n < 3) throw PreconditionError("derangement_tail_bound: n must be >= 3");
  const double nn = static_cast<double>(n);
  return make_bound(derangement_constant(*mom.b_ppv) / std::sqrt(nn * mom.dispersion) *
                    std::exp(-delta / 3.0));
}

double delta_lower(const InfoMoments& mom, std::uint64_t n, double alpha, double c,
                   double gamma_n) {
  const double nn = static_cast<double>(n);
  return gamma_n * nn * mom.mi + 3.0 * alpha * std::log(nn) + 3.0 * std::log(c);
}

namespace {

void check_operating_point(std::uint64_t n, double alpha, double c, double gamma_n) {
  if (n < 3) throw PreconditionError("n must be >= 3");
  if (!(gamma_n > 0.0 && gamma_n < 1.0)) throw PreconditionError("gamma_n must lie in (0, 1)");
  if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("c must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be >= 0");
}

}  // namespace

BoundReport feinstein_error_bound(const JointPMF& p, std::uint64_t n, double alpha, double c,
                                  double gamma_n, double delta) {
  check_operating_point(n, alpha, c, gamma_n);
  const InfoMoments mom = moments(p);
  require_dispersion(mom);
  const double lb = delta_lower(mom, n, alpha, c, gamma_n);
  if (!(delta >= lb - 1e-9 * std::max(1.0, std::abs(lb)))) {
    throw PreconditionError("feinstein_error_bound: delta below gamma_n n I + 3 alpha ln n + 3 ln c");
  }

  const double nn = static_cast<double>(n);
  BoundReport r;
  r.n = n;
  r.alpha = alpha;
  r.c = c;
  r.gamma_n = gamma_n;
  r.delta = delta;
  r.M = 2.0 * c * std::pow(nn, alpha) + 1.0;
  r.delta2 = 3.0 * alpha * std::log(nn) + 3.0 * std::log(c);
  r.delta1 = delta - r.delta2;
  r.tau = (nn * mom.mi - delta) / std::sqrt(nn * mom.dispersion);
  r.b_be = *mom.b_be;
  r.b_ppv = *mom.b_ppv;

  r.term_be_residual = r.b_be / std::sqrt(nn);
  r.term_cdf = q_function(r.tau) + r.term_be_residual;
  r.term_derangement = derangement_constant(r.b_ppv) / std::sqrt((1.0 - gamma_n) * nn);

  const double fixed = gamma_n * nn;
  r.rate_threshold_t = std::max(r.delta1 / fixed, mom.mi);
  // log((M - 1) / 2) = ln c + alpha ln n
  const double log_prefactor =
      std::log(c) + alpha * std::log(nn) + static_cast<double>(p.cells()) * std::log(fixed + 1.0);
  if (r.rate_threshold_t > max_info_density(p) + 1e-12) {
    // The fixed-point sum cannot reach delta1: the event is empty.
    r.rate_threshold_infeasible = true;
    r.rate = kInf;
    r.log_term_sanov = -kInf;
    r.term_sanov = 0.0;
  } else {
    r.rate = rate_function(p, r.rate_threshold_t).rate;
    r.log_term_sanov = log_prefactor - fixed * r.rate;
    r.term_sanov = std::exp(r.log_term_sanov);
  }

  r.total = r.term_cdf + r.term_derangement + r.term_sanov;
  r.vacuous = r.total >= 1.0;
  return r;
}

double achievability_small_terms(const InfoMoments& mom, std::uint64_t n, double c,
                                 double gamma_n) {
  require_dispersion(mom);
  const double nn = static_cast<double>(n);
  return *mom.b_be / std::sqrt(nn) +
         derangement_constant(*mom.b_ppv) / std::sqrt((1.0 - gamma_n) * nn) + c / std::sqrt(nn);
}

AchievabilityResult achievability_check(const JointPMF& p, std::uint64_t n, double eps,
                                        double alpha, double c, double gamma_n) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("achievability_check: eps must lie in (0, 1)");
  check_operating_point(n, alpha, c, gamma_n);
  const InfoMoments mom = moments(p);
  require_dispersion(mom);

  const double nn = static_cast<double>(n);
  AchievabilityResult a;
  a.small_terms = achievability_small_terms(mom, n, c, gamma_n);
  a.delta_lb = delta_lower(mom, n, alpha, c, gamma_n);
  const double fixed = gamma_n * nn;
  a.side_lhs = std::log1p(fixed) / fixed;
  if (a.small_terms >= eps) {
    a.eps_below_small_terms = true;
    a.delta_ub = -kInf;
    return a;
  }
  a.delta_ub = nn * mom.mi - std::sqrt(nn * mom.dispersion) * q_inverse(eps - a.small_terms);
  a.interval_nonempty = a.delta_lb <= a.delta_ub;
  if (!a.interval_nonempty) return a;

  a.witness = feinstein_error_bound(p, n, alpha, c, gamma_n, a.delta_ub);
  const double k = static_cast<double>(p.cells());
  a.side_rhs = a.witness->rate / (2.0 * k);
  a.side_condition_ok = a.side_lhs <= a.side_rhs;
  a.ok = a.side_condition_ok && a.witness->total <= eps;
  return a;
}

double GammaSchedule::operator()(std::uint64_t n) const {
  if (kind == Kind::kConstant) return value;
  return std::pow(static_cast<double>(n), -value);
}

std::string GammaSchedule::describe() const {
  char buf[64];
  if (kind == Kind::kConstant) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
  } else {
    std::snprintf(buf, sizeof buf, "n^-%.17g", value);
  }
  return buf;
}

SampleSizeResult min_sample_size(const JointPMF& p, double eps, double alpha, double c,
                                 const GammaSchedule& gamma, std::uint64_t cap) {
  if (cap < 1) throw PreconditionError("min_sample_size: cap must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("min_sample_size: eps must lie in (0, 1)");
  if (gamma.kind == GammaSchedule::Kind::kPower && !(gamma.value > 0.0)) {
    throw PreconditionError("min_sample_size: gamma exponent must be positive");
  }
  if (gamma.kind == GammaSchedule::Kind::kConstant && !(gamma.value > 0.0 && gamma.value < 1.0)) {
    throw PreconditionError("min_sample_size: constant gamma must lie in (0, 1)");
  }

  SampleSizeResult out;
  out.epsilon = eps;
  out.cap = cap;
  const InfoMoments mom = moments(p);
  if (mom.degenerate() || mom.mi <= 0.0) return out;

  const std::uint64_t first = 3;
  if (cap < first) return out;
  auto small_ok = [&](std::uint64_t n) {
    return achievability_small_terms(mom, n, c, gamma(n)) < eps;
  };
  if (!small_ok(cap)) return out;

  // Smallest n in [first, cap] with small terms below eps.
  std::uint64_t lo = first;
  std::uint64_t hi = cap;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (small_ok(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  for (std::uint64_t n = lo; n <= cap; ++n) {
    AchievabilityResult a = achievability_check(p, n, eps, alpha, c, gamma(n));
    ++out.evaluations;
    if (a.ok) {
      out.n_min = n;
      out.side_condition_ok = a.side_condition_ok;
      out.witness = std::move(a);
      return out;
    }
    if (n == cap) break;
  }
  return out;
}

}  // namespace imreg
