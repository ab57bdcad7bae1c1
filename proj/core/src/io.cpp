#include "imreg/io.hpp"

#include <cmath>
#include <string>

#include "imreg/errors.hpp"

namespace imreg {

namespace {

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type");
  }
}

Json optional_real(const std::optional<double>& v) { return v ? real(*v) : Json(nullptr); }

}  // namespace

Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const JointPMF& p) {
  Json j;
  j["x_size"] = p.x_size();
  j["y_size"] = p.y_size();
  j["probs"] = std::vector<double>(p.probs().begin(), p.probs().end());
  return j;
}

JointPMF joint_from_json(const Json& j) {
  const auto xs = get_field<std::size_t>(j, "x_size");
  const auto ys = get_field<std::size_t>(j, "y_size");
  auto probs = get_field<std::vector<double>>(j, "probs");
  if (probs.size() != xs * ys) throw ShapeError("probs must have x_size * y_size entries");
  return JointPMF(xs, ys, std::move(probs));
}

Json to_json(const Permutation& a) { return Json(a.mapping()); }

Permutation permutation_from_json(const Json& j) {
  try {
    return Permutation(j.get<std::vector<std::size_t>>());
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("permutation must be an array of non-negative integers");
  }
}

Json to_json(const TransformationFamily& f) {
  Json j = Json::array();
  for (const auto& m : f) j.push_back(to_json(m));
  return j;
}

TransformationFamily family_from_json(const Json& j, std::size_t n) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "cyclic") return cyclic_family(n);
    const std::string prefix = "cyclic_subgroup:";
    if (s.rfind(prefix, 0) == 0) {
      std::size_t pos = 0;
      std::size_t m = 0;
      try {
        m = std::stoul(s.substr(prefix.size()), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos == 0 || prefix.size() + pos != s.size()) {
        throw ValidationError("family '" + s + "': expected cyclic_subgroup:<M>");
      }
      return cyclic_subgroup(n, m);
    }
    throw ValidationError("unknown family '" + s + "'");
  }
  if (!j.is_array()) throw ValidationError("family must be a string or an array of permutations");
  std::vector<Permutation> members;
  for (const auto& m : j) members.push_back(permutation_from_json(m));
  TransformationFamily f(std::move(members));
  if (f.n() != n) throw ShapeError("family permutations do not act on n pixels");
  return f;
}

ChannelPair channel_from_json(const Json& j) {
  const auto type = get_field<std::string>(j, "type");
  if (type == "bsc") return bsc_pair(get_field<double>(j, "crossover"));
  if (type == "joint") {
    return {SourcePrior({1.0}), JointDMC({joint_from_json(j)})};
  }
  if (type == "dmc") {
    const auto prior = get_field<std::vector<double>>(j, "prior");
    if (!j.at("kernel").is_array()) throw ValidationError("kernel must be an array");
    std::vector<JointPMF> kernel;
    for (const auto& w : j.at("kernel")) kernel.push_back(joint_from_json(w));
    return {SourcePrior(prior), JointDMC(std::move(kernel))};
  }
  throw ValidationError("unknown channel type '" + type + "'");
}

Json to_json(const InfoMoments& m) {
  Json j;
  j["mi"] = real(m.mi);
  j["dispersion"] = real(m.dispersion);
  j["third_abs"] = real(m.third_abs);
  j["b_be"] = optional_real(m.b_be);
  j["b_ppv"] = optional_real(m.b_ppv);
  j["lautum"] = real(m.lautum);
  j["lautum_infinite"] = std::isinf(m.lautum);
  j["degenerate"] = m.degenerate();
  return j;
}

Json to_json(const RateEval& r) {
  Json j;
  j["t"] = real(r.threshold_t);
  j["lambda_star"] = real(r.lambda_star);
  j["lambda_star_infinite"] = std::isinf(r.lambda_star);
  j["rate"] = real(r.rate);
  j["cgf_at_lambda"] = real(r.cgf_at_lambda);
  return j;
}

Json to_json(const ProbabilityBound& b) {
  Json j;
  j["raw"] = real(b.raw);
  j["value"] = real(b.value);
  j["log_raw"] = real(b.log_raw);
  j["vacuous"] = b.vacuous;
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["M"] = real(r.M);
  j["alpha"] = real(r.alpha);
  j["c"] = real(r.c);
  j["gamma_n"] = real(r.gamma_n);
  j["delta"] = real(r.delta);
  j["delta1"] = real(r.delta1);
  j["delta2"] = real(r.delta2);
  j["tau"] = real(r.tau);
  j["b_be"] = real(r.b_be);
  j["b_ppv"] = real(r.b_ppv);
  j["term_cdf"] = real(r.term_cdf);
  j["term_be_residual"] = real(r.term_be_residual);
  j["term_derangement"] = real(r.term_derangement);
  j["term_sanov"] = real(r.term_sanov);
  j["log_term_sanov"] = real(r.log_term_sanov);
  j["total"] = real(r.total);
  j["vacuous"] = r.vacuous;
  j["rate_threshold_t"] = real(r.rate_threshold_t);
  j["rate"] = real(r.rate);
  j["rate_threshold_infeasible"] = r.rate_threshold_infeasible;
  return j;
}

Json to_json(const AchievabilityResult& a) {
  Json j;
  j["ok"] = a.ok;
  j["eps_below_small_terms"] = a.eps_below_small_terms;
  j["small_terms"] = real(a.small_terms);
  j["delta_lb"] = real(a.delta_lb);
  j["delta_ub"] = real(a.delta_ub);
  j["interval_nonempty"] = a.interval_nonempty;
  j["side_condition_ok"] = a.side_condition_ok;
  j["side_lhs"] = real(a.side_lhs);
  j["side_rhs"] = real(a.side_rhs);
  j["witness"] = a.witness ? to_json(*a.witness) : Json(nullptr);
  return j;
}

Json to_json(const ErrorEstimate& e) {
  Json j;
  j["trials"] = e.trials;
  j["errors"] = e.errors;
  j["p_hat"] = real(e.p_hat);
  j["ci_low"] = real(e.ci_low);
  j["ci_high"] = real(e.ci_high);
  return j;
}

Json to_json(const TypeCountReport& r) {
  Json j;
  j["n"] = r.n;
  j["r"] = r.r;
  j["k"] = r.k;
  j["kappa"] = r.kappa;
  j["center"] = real(r.center);
  j["half_width"] = real(r.half_width);
  j["analytic_lb"] = real(r.analytic_lb);
  j["analytic_ub"] = real(r.analytic_ub);
  j["exact_count"] = r.exact_count ? Json(*r.exact_count) : Json(nullptr);
  j["exact_log2_size"] = optional_real(r.exact_log2_size);
  j["budget_skipped"] = r.budget_skipped;
  j["in_band"] = r.in_band ? Json(*r.in_band) : Json(nullptr);
  return j;
}

Json to_json(const ExponentGapReport& g) {
  Json j;
  j["n"] = g.n;
  j["kappa"] = g.kappa;
  j["r"] = g.r;
  j["gap_upper"] = real(g.gap_upper);
  j["cycle_term"] = real(g.cycle_term);
  j["type_count_term"] = real(g.type_count_term);
  j["union_term"] = real(g.union_term);
  j["mmi_lower_correction"] = real(g.mmi_lower_correction);
  j["ml_upper_correction"] = real(g.ml_upper_correction);
  j["vacuous"] = g.vacuous;
  j["e_star"] = optional_real(g.e_star);
  j["mmi_exponent_lower"] = optional_real(g.mmi_exponent_lower);
  j["ml_exponent_upper"] = optional_real(g.ml_exponent_upper);
  return j;
}

Json to_json(const GapEstimate& g) {
  Json j;
  j["n"] = g.n;
  j["first"] = to_json(g.first);
  j["second"] = to_json(g.second);
  j["both_errors"] = g.both_errors;
  j["gap_hat"] = real(g.gap_hat);
  j["gap_se"] = real(g.gap_se);
  j["gap_ci"] = real(g.gap_ci);
  return j;
}

Json to_json(const FamilyReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["closed"] = r.closed;
  j["commutative"] = r.commutative;
  j["has_identity"] = r.has_identity;
  j["has_inverses"] = r.has_inverses;
  Json v = Json::array();
  for (const auto& w : r.violations) {
    Json e;
    e["property"] = w.property;
    e["first"] = w.first;
    e["second"] = w.second ? Json(*w.second) : Json(nullptr);
    v.push_back(e);
  }
  j["violations"] = v;
  return j;
}

}  // namespace imreg
