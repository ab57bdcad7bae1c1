#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "csv.hpp"
#include "imreg/bounds.hpp"
#include "imreg/channel_model.hpp"
#include "imreg/decoders.hpp"
#include "imreg/errors.hpp"
#include "imreg/info_measures.hpp"
#include "imreg/io.hpp"
#include "imreg/type_counting.hpp"
#include "imreg_cli/cli.hpp"

namespace imreg::cli {

namespace {

using Json = nlohmann::ordered_json;

template <class T>
T value_or(const Json& config, const char* key, T fallback) {
  return config.contains(key) ? config.at(key).get<T>() : fallback;
}

GammaSchedule gamma_of(const Json& config) {
  if (!config.contains("gamma")) return GammaSchedule::power(0.5);
  const Json& g = config.at("gamma");
  if (g.contains("constant")) return GammaSchedule::constant(g.at("constant").get<double>());
  return GammaSchedule::power(g.at("power").get<double>());
}

Payload json_payload(const Json& j) { return {"json", j.dump(2) + "\n"}; }

TransformationFamily load_family(const Json& spec, std::size_t n, const RunOptions& options) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s != "cyclic" && s.rfind("cyclic_subgroup:", 0) != 0) {
      std::filesystem::path path(s);
      if (path.is_relative()) path = std::filesystem::path(options.config_dir) / path;
      std::ifstream in(path);
      if (!in) throw ValidationError("family '" + s + "' is neither built in nor a readable file");
      Json file;
      try {
        file = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("family file '" + s + "': " + e.what());
      }
      return family_from_json(file, n);
    }
  }
  return family_from_json(spec, n);
}

// ---------------------------------------------------------------- moments

Payload cmd_moments(const Json& config) {
  const ChannelPair ch = channel_from_json(config.at("channel"));
  const JointPMF p = induced_joint(ch.prior, ch.dmc);
  const InfoMoments m = moments(p);
  const double ln2 = std::numbers::ln2;

  Json out;
  out["channel"] = to_json(p);
  out["mi_nats"] = real(m.mi);
  out["dispersion_nats2"] = real(m.dispersion);
  out["third_abs_nats3"] = real(m.third_abs);
  out["mi_bits"] = real(m.mi / ln2);
  out["dispersion_bits2"] = real(m.dispersion / (ln2 * ln2));
  out["third_abs_bits3"] = real(m.third_abs / (ln2 * ln2 * ln2));
  out["b_be"] = m.b_be ? real(*m.b_be) : Json(nullptr);
  out["b_ppv"] = m.b_ppv ? real(*m.b_ppv) : Json(nullptr);
  out["lautum_nats"] = real(m.lautum);
  out["lautum_infinite"] = std::isinf(m.lautum);
  const double top = max_info_density(p);
  out["max_info_density_nats"] = real(top);
  out["degenerate"] = m.degenerate();
  out["warning"] = m.degenerate()
                       ? Json("information dispersion is zero; finite-n bounds are undefined")
                       : Json(nullptr);

  Json samples = Json::array();
  const int points = value_or<int>(config, "rate_points", 11);
  if (!m.degenerate() && top > m.mi) {
    for (int i = 0; i < points; ++i) {
      const double t = i + 1 == points ? top : m.mi + (top - m.mi) * i / (points - 1);
      samples.push_back(to_json(rate_function(p, t)));
    }
  }
  out["rate_samples"] = samples;
  return json_payload(out);
}

// ------------------------------------------------------------------ bound

Payload cmd_bound(const Json& config) {
  const ChannelPair ch = channel_from_json(config.at("channel"));
  const JointPMF p = induced_joint(ch.prior, ch.dmc);
  const InfoMoments m = moments(p);
  if (m.degenerate()) throw DegenerateError("bound undefined: information dispersion is zero");

  const auto n = config.at("n").get<std::uint64_t>();
  const double alpha = value_or<double>(config, "alpha", 5.0);
  const double c = value_or<double>(config, "c", 0.5);
  const GammaSchedule schedule = gamma_of(config);
  const double gamma = schedule(n);

  Json out;
  out["channel"] = to_json(p);
  out["moments"] = to_json(m);
  out["gamma_schedule"] = schedule.describe();

  std::optional<AchievabilityResult> ach;
  if (config.contains("epsilon")) {
    ach = achievability_check(p, n, config.at("epsilon").get<double>(), alpha, c, gamma);
    out["epsilon"] = config.at("epsilon");
  }
  double delta = 0.0;
  std::string source;
  if (config.contains("delta")) {
    delta = config.at("delta").get<double>();
    source = "config";
  } else if (ach && ach->interval_nonempty) {
    delta = ach->delta_ub;
    source = "delta_ub";
  } else {
    delta = delta_lower(m, n, alpha, c, gamma);
    source = "delta_lb";
  }
  out["delta_source"] = source;
  out["report"] = to_json(feinstein_error_bound(p, n, alpha, c, gamma, delta));
  out["achievability"] = ach ? to_json(*ach) : Json(nullptr);
  return json_payload(out);
}

// ------------------------------------------------------------- samplesize

Payload cmd_samplesize(const Json& config) {
  const auto eps_grid = config.at("epsilons").get<std::vector<double>>();
  const auto cross_grid = config.at("crossovers").get<std::vector<double>>();
  const double alpha = value_or<double>(config, "alpha", 5.0);
  const double c = value_or<double>(config, "c", 0.5);
  const auto cap = value_or<std::uint64_t>(config, "cap", kDefaultSampleSizeCap);
  const GammaSchedule schedule = gamma_of(config);

  CsvWriter csv({"epsilon", "crossover", "n_min", "side_condition_ok", "delta_lb", "delta_ub"});
  for (double d : cross_grid) {
    const JointPMF p = bsc_joint(d);
    for (double eps : eps_grid) {
      const SampleSizeResult r = min_sample_size(p, eps, alpha, c, schedule, cap);
      if (r.n_min) {
        csv.row({CsvWriter::real(eps), CsvWriter::real(d), CsvWriter::integer(*r.n_min),
                 CsvWriter::boolean(r.side_condition_ok), CsvWriter::real(r.witness->delta_lb),
                 CsvWriter::real(r.witness->delta_ub)});
      } else {
        csv.row({CsvWriter::real(eps), CsvWriter::real(d), "not_found", "false", "", ""});
      }
    }
  }
  return {"csv", csv.text()};
}

// --------------------------------------------------------------- simulate

Payload cmd_simulate(const Json& config, const RunOptions& options) {
  const ChannelPair ch = channel_from_json(config.at("channel"));
  const auto n = config.at("n").get<std::size_t>();
  const TransformationFamily family =
      load_family(config.contains("family") ? config.at("family") : Json("cyclic"), n, options);
  const Scenario scenario(ch.prior, ch.dmc, family);
  const JointPMF& p = scenario.joint();
  const auto trials = config.at("trials").get<std::uint64_t>();
  const auto names = value_or<std::vector<std::string>>(config, "decoders", {"ml", "mmi", "feinstein"});
  const InfoMoments m = moments(p);

  // The bound column matches the family size: M = 2 c n^alpha + 1.
  const double alpha = value_or<double>(config, "alpha", 1.0);
  const double nn = static_cast<double>(n);
  const double c = (static_cast<double>(family.size()) - 1.0) / (2.0 * std::pow(nn, alpha));
  const double gamma = gamma_of(config)(n);

  std::optional<double> delta;
  if (config.contains("delta")) {
    delta = config.at("delta").get<double>();
  } else if (!m.degenerate()) {
    delta = std::max(nn * m.mi - 2.0 * std::sqrt(nn * m.dispersion),
                     c > 0.0 ? delta_lower(m, n, alpha, c, gamma) : -INFINITY);
  }

  CsvWriter csv({"decoder", "delta", "trials", "errors", "p_hat", "ci_low", "ci_high", "bound",
                 "bound_vacuous"});
  for (const auto& name : names) {
    DecoderSpec spec{parse_decoder_kind(name), 0.0};
    if (spec.kind == DecoderKind::kFeinstein) {
      if (!delta) throw DegenerateError("feinstein decoder needs delta when the dispersion is zero");
      spec.delta = *delta;
    }
    const ErrorEstimate e = monte_carlo_error(spec, scenario, trials, options.seed, options.threads);

    std::string bound;
    std::string vacuous;
    if (spec.kind == DecoderKind::kFeinstein && !m.degenerate() && c > 0.0 && n >= 3 &&
        spec.delta >= delta_lower(m, n, alpha, c, gamma)) {
      const BoundReport r = feinstein_error_bound(p, n, alpha, c, gamma, spec.delta);
      bound = CsvWriter::real(r.total);
      vacuous = CsvWriter::boolean(r.vacuous);
    }
    csv.row({name, spec.kind == DecoderKind::kFeinstein ? CsvWriter::real(spec.delta) : "",
             CsvWriter::integer(e.trials), CsvWriter::integer(e.errors), CsvWriter::real(e.p_hat),
             CsvWriter::real(e.ci_low), CsvWriter::real(e.ci_high), bound, vacuous});
  }
  return {"csv", csv.text()};
}

// -------------------------------------------------------------- typecount

std::string counts_field(const std::vector<std::uint64_t>& counts) {
  std::string s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(counts[i]);
  }
  return s;
}

void typecount_row(CsvWriter& csv, const TypeCountReport& r, const std::vector<std::uint64_t>& q) {
  csv.row({CsvWriter::integer(r.n), CsvWriter::integer(r.r), CsvWriter::integer(r.k),
           CsvWriter::integer(r.kappa), counts_field(q),
           r.exact_count ? CsvWriter::integer(*r.exact_count) : "",
           CsvWriter::real(r.exact_log2_size), CsvWriter::real(r.center),
           CsvWriter::real(r.half_width), CsvWriter::real(r.analytic_lb),
           CsvWriter::real(r.analytic_ub), r.in_band ? CsvWriter::boolean(*r.in_band) : "",
           CsvWriter::boolean(r.budget_skipped)});
}

SymbolSeq representative_sequence(const Json& config, std::size_t n, std::size_t r,
                                  std::uint64_t seed) {
  if (config.contains("sequence")) {
    const auto raw = config.at("sequence").get<std::vector<std::uint64_t>>();
    if (raw.size() != n) throw ShapeError("sequence length must equal n");
    SymbolSeq s;
    for (auto v : raw) {
      if (v >= r) throw ShapeError("sequence symbol outside [r]");
      s.push_back(static_cast<Symbol>(v));
    }
    return s;
  }
  CounterRng rng(seed, 0);
  SymbolSeq s(n);
  for (auto& v : s) v = static_cast<Symbol>(rng.below(r));
  return s;
}

Payload cmd_typecount(const Json& config, const RunOptions& options) {
  const auto n = config.at("n").get<std::size_t>();
  const auto r = config.at("r").get<std::size_t>();
  const auto budget = value_or<std::uint64_t>(config, "budget", kDefaultEnumerationBudget);
  const std::string mode = value_or<std::string>(config, "mode", "delay");

  std::vector<std::size_t> shifts;
  if (!config.contains("k") || config.at("k").is_string()) {
    for (std::size_t k = 0; k < n; ++k) shifts.push_back(k);
  } else {
    const auto k = config.at("k").get<std::size_t>();
    if (k >= n) throw ShapeError("k must be < n");
    shifts.push_back(k);
  }

  CsvWriter csv({"n", "r", "k", "kappa", "type", "exact_count", "exact_log2_size", "center",
                 "half_width", "analytic_lb", "analytic_ub", "in_band", "budget_skipped"});

  if (mode == "conditional") {
    if (!config.contains("sequence")) throw ShapeError("conditional mode needs 'sequence'");
    const auto r_y = value_or<std::size_t>(config, "r_y", r);
    const SymbolSeq xs = representative_sequence(config, n, r, options.seed);
    for (std::size_t k : shifts) {
      try {
        for (const auto& [counts, size] : conditional_type_census(xs, k, r, r_y, budget)) {
          const JointDelayType q{n, k, r, r_y, counts};
          typecount_row(csv, lemma6_bounds(xs, q, budget), counts);
        }
      } catch (const BudgetError&) {
        if (options.strict) throw;
        SymbolSeq ys = representative_sequence(Json::object(), n, r_y, options.seed + 1);
        const JointDelayType q = joint_delay_type_of(xs, ys, k, r, r_y);
        typecount_row(csv, lemma6_bounds(xs, q, 0), q.counts);
      }
    }
    return {"csv", csv.text()};
  }

  for (std::size_t k : shifts) {
    try {
      for (const auto& [counts, size] : delay_type_census(n, r, k, budget)) {
        const DelayType q{n, k, r, counts};
        TypeCountReport rep = lemma5_bounds(q, budget);
        typecount_row(csv, rep, counts);
      }
    } catch (const BudgetError&) {
      if (options.strict) throw;
      const SymbolSeq xs = representative_sequence(config, n, r, options.seed);
      const DelayType q = delay_type_of(xs, k, r);
      typecount_row(csv, lemma5_bounds(q, budget), q.counts);
    }
  }
  return {"csv", csv.text()};
}

// -------------------------------------------------------------------- gap

Payload cmd_gap(const Json& config, const RunOptions& options) {
  const auto n = config.at("n").get<std::size_t>();
  const auto r = config.at("r").get<std::size_t>();
  std::vector<std::size_t> kappas;
  if (config.at("kappa").is_array()) {
    kappas = config.at("kappa").get<std::vector<std::size_t>>();
  } else {
    kappas.push_back(config.at("kappa").get<std::size_t>());
  }
  std::optional<double> e_star;
  if (config.contains("e_star")) e_star = config.at("e_star").get<double>();

  Json out;
  Json reports = Json::array();
  for (std::size_t kappa : kappas) reports.push_back(to_json(exponent_gap_bound(n, kappa, r, e_star)));
  out["reports"] = reports;

  if (config.contains("empirical")) {
    const Json& e = config.at("empirical");
    const ChannelPair ch = channel_from_json(e.at("channel"));
    const TransformationFamily family =
        load_family(e.contains("family") ? e.at("family") : Json("cyclic"), n, options);
    const Scenario scenario(ch.prior, ch.dmc, family);
    const GapEstimate g = empirical_gap(scenario, e.at("trials").get<std::uint64_t>(),
                                        options.seed, options.threads, {DecoderKind::kMMI, 0.0},
                                        {DecoderKind::kML, 0.0},
                                        value_or<std::uint64_t>(e, "min_errors", 20));
    const std::size_t kappa_max = max_cycle_count(family);
    const std::size_t alphabet = std::max(scenario.joint().x_size(), scenario.joint().y_size());
    Json emp = to_json(g);
    emp["kappa_max"] = kappa_max;
    emp["bound"] = to_json(exponent_gap_bound(n, kappa_max, alphabet, e_star));
    out["empirical"] = emp;
  }
  return json_payload(out);
}

// -------------------------------------------------------- validate-family

Payload cmd_validate_family(const Json& config, const RunOptions& options) {
  const auto n = config.at("n").get<std::size_t>();
  const TransformationFamily family = load_family(config.at("family"), n, options);
  Json out = to_json(validate_family(family));
  out["n"] = n;
  out["size"] = family.size();
  out["contains_identity"] = family.contains_identity();
  if (family.size() > 1) {
    const Permutation& worst = worst_case_transform(family);
    out["worst_case_index"] = *family.index_of(worst);
    out["worst_case_fixed_points"] = worst.fixed_point_count();
    out["max_cycle_count"] = max_cycle_count(family);
  }
  return json_payload(out);
}

}  // namespace

Payload run_command(const std::string& command, const Json& config, const RunOptions& options) {
  if (command == "moments") return cmd_moments(config);
  if (command == "bound") return cmd_bound(config);
  if (command == "samplesize") return cmd_samplesize(config);
  if (command == "simulate") return cmd_simulate(config, options);
  if (command == "typecount") return cmd_typecount(config, options);
  if (command == "gap") return cmd_gap(config, options);
  if (command == "validate-family") return cmd_validate_family(config, options);
  throw PreconditionError("unknown command '" + command + "'");
}

}  // namespace imreg::cli
