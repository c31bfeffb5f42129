// SPDX-License-Identifier: Apache-2.0
#include "tlsw/cli.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tlsw/csv.hpp"
#include "tlsw/lacv.hpp"
#include "tlsw/scenarios.hpp"
#include "tlsw/simulate.hpp"
#include "tlsw/spectrum.hpp"
#include "tlsw/svg.hpp"
#include "tlsw/trend.hpp"
#include "tlsw/wavelets.hpp"

namespace tlsw::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_json(const fs::path& path, const json& j) { io::write_text_atomic(path, j.dump(2) + "\n"); }

VectorXd load_input(const RunConfig& c, Index min_len) {
  if (c.input.empty()) throw Error(Errc::InvalidArgument, "--input is required");
  if (!fs::exists(c.input)) throw Error(Errc::Io, "input file '" + c.input.string() + "' does not exist");
  VectorXd x = io::read_series(c.input);
  if (x.size() < min_len) {
    throw Error(Errc::SeriesTooShort, "estimation needs at least " + std::to_string(min_len) + " values, got " +
                                          std::to_string(x.size()));
  }
  return x;
}

SpectrumOptions spectrum_options(const RunConfig& c) {
  SpectrumOptions o;
  o.filter = make_filter(parse_family(c.s_family), c.s_filter_number);
  o.max_scale = c.s_max_scale;
  o.smoother = c.s_smooth ? parse_smoother(c.s_smooth_type) : SmootherType::None;
  o.binwidth = c.s_binwidth;
  o.boundary = c.s_boundary_handle;
  if (c.s_do_diff) o.diff = Differencing{c.s_lag, c.s_diff_number};
  o.floor_negative = c.s_floor;
  return o;
}

TrendConfig trend_config(const RunConfig& c) {
  TrendConfig t;
  if (c.t_est_type == "linear") {
    t.method = TrendMethod::Linear;
  } else if (c.t_est_type == "nonlinear") {
    t.method = TrendMethod::Nonlinear;
  } else {
    throw Error(Errc::InvalidArgument, "--t-est-type must be 'linear' or 'nonlinear'");
  }
  t.filter = make_filter(parse_family(c.t_family), c.t_filter_number);
  t.max_scale = c.t_max_scale;
  if (c.t_transform == "dec") {
    t.transform = TransformMode::Decimated;
  } else if (c.t_transform == "nondec") {
    t.transform = TransformMode::Nondecimated;
  } else {
    throw Error(Errc::InvalidArgument, "--t-transform must be 'dec' or 'nondec'");
  }
  t.boundary = c.t_boundary_handle;
  if (c.t_thresh_type == "hard") {
    t.policy.type = ThresholdType::Hard;
  } else if (c.t_thresh_type == "soft") {
    t.policy.type = ThresholdType::Soft;
  } else {
    throw Error(Errc::InvalidArgument, "--t-thresh-type must be 'hard' or 'soft'");
  }
  t.policy.normal_assumption = c.t_thresh_normal;
  return t;
}

// Interval flavour actually computed: the normal-theory formula when the
// linear DWT estimator is used, otherwise the bootstrap.
CiType resolve_ci_type(const RunConfig& c, const TrendConfig& t) {
  if (!c.t_ci) return CiType::None;
  if (c.t_ci_type == "analytic") return CiType::Analytic;
  const bool linear_dec = t.method == TrendMethod::Linear && t.transform == TransformMode::Decimated;
  if (c.t_ci_type == "normal") return linear_dec ? CiType::Analytic : CiType::BootNormal;
  if (c.t_ci_type == "percentile") return CiType::BootPercentile;
  throw Error(Errc::InvalidArgument, "--t-ci-type must be 'normal', 'percentile' or 'analytic'");
}

json filter_json(const WaveletFilter& f) {
  return {{"family", std::string(family_name(f.family))}, {"filter_number", f.filter_number}};
}

json spectrum_json(const RunConfig& c, const SpectrumEstimate& s) {
  const auto& ext = s.periodogram.extension;
  return {
      {"filter", filter_json(s.filter)},
      {"max_scale", s.j0()},
      {"smooth", c.s_smooth},
      {"smooth_type", std::string(smoother_name(s.periodogram.smoother->type))},
      {"binwidth", s.binwidth},
      {"binwidth_clamped", s.binwidth_clamped},
      {"boundary_handle", c.s_boundary_handle},
      {"extension_policy", std::string(extension_policy_name(ext.policy))},
      {"extended_length", ext.extended_len},
      {"do_diff", c.s_do_diff},
      {"lag", c.s_lag},
      {"diff_number", c.s_diff_number},
      {"difference_normalization", c.s_diff_number == 2 ? "1/sqrt(6)" : "1/sqrt(2)"},
      {"negative_values", s.floored ? "floored" : "kept"},
      {"smoothing_order", "trim_then_smooth"},
      {"median_consistency_factor", median_consistency_factor()},
      {"correction_condition_number", s.correction.condition_number},
  };
}

struct Results {
  VectorXd x;
  std::optional<SpectrumEstimate> spectrum;
  std::optional<TrendEstimate> trend;
  std::optional<LacvEstimate> lacv;
  json meta;
};

// Runs whatever the command needs; spectrum first because both the
// nonlinear trend and the intervals depend on it.
Results compute(const RunConfig& c, bool want_spectrum, bool want_trend, bool want_lacv) {
  Results r;
  r.x = load_input(c, 16);
  const Index n = r.x.size();
  r.meta["command"] = c.command;
  r.meta["input"] = c.input.string();
  r.meta["n"] = n;
  r.meta["seed"] = c.seed;
  r.meta["threads"] = c.threads;
  r.meta["rescaled_time"] = "(t + 0.5) / n";

  TrendConfig tcfg;
  CiType ci = CiType::None;
  if (want_trend) {
    tcfg = trend_config(c);
    ci = resolve_ci_type(c, tcfg);
  }
  const bool need_spectrum = want_spectrum || want_lacv ||
                             (want_trend && (tcfg.method == TrendMethod::Nonlinear || ci != CiType::None));
  if (need_spectrum) {
    r.spectrum = estimate_spectrum(r.x, spectrum_options(c));
    r.meta["spectrum"] = spectrum_json(c, *r.spectrum);
  }

  const Index lag_max = c.t_lacf_max_lag.value_or(default_lag_max(n));
  auto lacv_of_spectrum = [&] {
    return lacv_from_spectrum(r.spectrum->S, autocorr_wavelet(r.spectrum->filter, r.spectrum->j0()), lag_max);
  };
  if (want_lacv) {
    r.lacv = lacv_of_spectrum();
    r.meta["lacf"] = {{"lag_max", lag_max},
                      {"log_base", "e"},
                      {"nonpositive_variance_rows", r.lacv->nonpositive_variance_rows}};
    if (r.lacv->nonpositive_variance_rows > 0) {
      std::cerr << "warning: " << r.lacv->nonpositive_variance_rows
                << " time points have nonpositive estimated variance; autocorrelation set to NaN\n";
    }
  }

  if (want_trend) {
    TrendEstimate est = estimate_trend(r.x, tcfg, r.spectrum ? &*r.spectrum : nullptr);
    std::optional<int> ci_depth;
    if (ci == CiType::Analytic) {
      ci_depth = c.t_ci_max_scale.value_or(analytic_ci_spectrum_depth(n, est.max_scale));
      SpectrumOptions o = spectrum_options(c);
      o.max_scale = *ci_depth;
      const SpectrumEstimate deep = estimate_spectrum(r.x, o);
      const LacvEstimate ci_lacv = lacv_from_spectrum(deep.S, autocorr_wavelet(deep.filter, deep.j0()), lag_max);
      est = analytic_ci(r.x, std::move(est), tcfg, ci_lacv, c.t_sig_lvl);
    } else if (ci != CiType::None) {
      BootstrapOptions b;
      b.reps = c.t_reps;
      b.alpha = c.t_sig_lvl;
      b.type = ci;
      b.seed = c.seed;
      b.threads = c.threads;
      est = bootstrap_ci(std::move(est), *r.spectrum, tcfg, b);
    }
    const bool recommended = (tcfg.method == TrendMethod::Linear) != c.s_do_diff;
    r.meta["trend"] = {
        {"est_type", std::string(trend_method_name(tcfg.method))},
        {"filter", filter_json(tcfg.filter)},
        {"transform", std::string(transform_mode_name(tcfg.transform))},
        {"max_scale", est.max_scale},
        {"boundary_handle", tcfg.boundary},
        {"extension_policy", tcfg.boundary ? "symmetric_triple" : "none"},
        {"thresh_type", std::string(threshold_type_name(tcfg.policy.type))},
        {"thresh_normal", tcfg.policy.normal_assumption},
        {"ci", c.t_ci},
        {"ci_type", std::string(ci_type_name(est.ci_type))},
        {"sig_lvl", c.t_sig_lvl},
        {"reps", est.reps},
        {"bootstrap_spectrum", "fixed estimate, floored at zero"},
        {"recommended_pairing", recommended},
    };
    if (ci_depth) r.meta["trend"]["ci_spectrum_max_scale"] = *ci_depth;
    r.trend = std::move(est);
  }
  return r;
}

void write_spectrum(const RunConfig& c, const SpectrumEstimate& s) {
  io::write_text_atomic(c.out_dir / "spectrum.csv", io::matrix_csv(s.S));
}

void write_trend(const RunConfig& c, const TrendEstimate& t) {
  io::write_text_atomic(c.out_dir / "trend.csv", io::trend_csv(t.T_hat, t.ci_lo, t.ci_hi));
}

void write_lacv(const RunConfig& c, const LacvEstimate& l) {
  io::write_text_atomic(c.out_dir / "lacv.csv", io::matrix_csv(l.lacv));
  io::write_text_atomic(c.out_dir / "lacr.csv", io::matrix_csv(l.lacr));
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "TRUE" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "FALSE" || s == "0" || s == "no") return false;
  throw Error(Errc::InvalidArgument, "expected a boolean, got '" + s + "'");
}

}  // namespace

int cmd_sim(const RunConfig& c) {
  const WaveletFilter filter = make_filter(parse_family(c.family), c.filter_number);
  VectorXd x;
  json meta{{"command", "sim"}, {"seed", c.seed}, {"filter", filter_json(filter)}, {"rescaled_time", "(t + 0.5) / n"}};
  if (!c.scenario.empty()) {
    if (!c.trend_file.empty() || !c.spec_file.empty()) {
      throw Error(Errc::InvalidArgument, "--scenario cannot be combined with --trend/--spec");
    }
    Scenario s = c.scenario == "x1" && c.sim_n ? scenario_x1(*c.sim_n) : scenario_by_name(c.scenario);
    x = tlsw_sim(s.trend, s.spectrum, s.n, filter, c.seed);
    meta["scenario"] = c.scenario;
  } else {
    if (c.trend_file.empty() || c.spec_file.empty()) {
      throw Error(Errc::InvalidArgument, "sim needs --scenario or both --trend and --spec");
    }
    for (const auto& p : {c.trend_file, c.spec_file}) {
      if (!fs::exists(p)) throw Error(Errc::Io, "input file '" + p.string() + "' does not exist");
    }
    const VectorXd trend = io::read_series(c.trend_file);
    const MatrixXd spec = io::read_matrix(c.spec_file);
    x = tlsw_sim(TrendSpec{trend}, SpectrumSpec{spec}, trend.size(), filter, c.seed);
    meta["trend_file"] = c.trend_file.string();
    meta["spec_file"] = c.spec_file.string();
  }
  meta["n"] = x.size();
  ensure_out_dir(c.out_dir);
  io::write_text_atomic(c.out_dir / "series.csv", io::series_csv(x));
  write_json(c.out_dir / "series.json", meta);
  return kExitOk;
}

int cmd_spec(const RunConfig& c) {
  Results r = compute(c, true, false, false);
  ensure_out_dir(c.out_dir);
  write_spectrum(c, *r.spectrum);
  write_json(c.out_dir / "metadata.json", r.meta);
  return kExitOk;
}

int cmd_trend(const RunConfig& c) {
  Results r = compute(c, false, true, false);
  ensure_out_dir(c.out_dir);
  write_trend(c, *r.trend);
  write_json(c.out_dir / "metadata.json", r.meta);
  return kExitOk;
}

int cmd_lacf(const RunConfig& c) {
  Results r = compute(c, true, false, true);
  ensure_out_dir(c.out_dir);
  write_lacv(c, *r.lacv);
  write_json(c.out_dir / "metadata.json", r.meta);
  return kExitOk;
}

int cmd_analyze(const RunConfig& c) {
  Results r = compute(c, true, true, true);
  ensure_out_dir(c.out_dir);
  write_spectrum(c, *r.spectrum);
  write_trend(c, *r.trend);
  write_lacv(c, *r.lacv);
  write_json(c.out_dir / "metadata.json", r.meta);
  return kExitOk;
}

int cmd_plot(const RunConfig& c) {
  const fs::path dir = c.results_dir.empty() ? c.out_dir : c.results_dir;
  const fs::path trend_path = dir / "trend.csv";
  const fs::path spec_path = dir / "spectrum.csv";
  const fs::path lacr_path = dir / "lacr.csv";
  for (const auto& p : {c.input, trend_path, spec_path, lacr_path}) {
    if (p.empty() || !fs::exists(p)) {
      throw Error(Errc::Io, "plot input '" + p.string() + "' is missing (run analyze first)");
    }
  }
  const auto scaling = svg::parse_scaling(c.scaling);
  const VectorXd data = io::read_series(c.input);
  const auto trend = io::read_trend_csv(trend_path);
  if (trend.estimate.size() != data.size()) {
    throw Error(Errc::DimensionMismatch, "trend.csv and input series lengths differ");
  }
  const MatrixXd spectrum = io::read_matrix(spec_path);
  const MatrixXd lacr = io::read_matrix(lacr_path);

  ensure_out_dir(c.out_dir);
  io::write_text_atomic(c.out_dir / "trend.svg", svg::trend_figure(data, trend.estimate, trend.lo, trend.hi));
  io::write_text_atomic(c.out_dir / "spectrum.svg", svg::spectrum_figure(spectrum, scaling));
  io::write_text_atomic(c.out_dir / "lacf.svg", svg::lacf_figure(lacr, c.lacf_times));
  return kExitOk;
}

int run(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Trend locally stationary wavelet analysis", "tlsw"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string s_smooth = "true";
  std::string s_boundary = "true";
  std::string s_do_diff = "false";
  std::string t_boundary = "true";
  std::string t_ci = "false";
  std::string t_thresh_normal = "true";
  std::optional<std::string> ci_alias;
  std::optional<Index> diff_alias;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", c.out_dir, "Output directory");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_option("--threads", c.threads, "Worker threads for the bootstrap")->check(CLI::PositiveNumber);
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("--input", c.input, "Series CSV")->required(); };
  auto add_spectrum = [&](CLI::App* sub) {
    sub->add_option("--s-filter-number", c.s_filter_number, "Spectrum wavelet vanishing moments");
    sub->add_option("--s-family", c.s_family, "DaubExPhase or DaubLeAsymm");
    sub->add_option("--s-smooth", s_smooth, "Smooth the periodogram (true/false)");
    sub->add_option("--s-smooth-type", c.s_smooth_type, "mean, median or epan");
    sub->add_option("--s-binwidth", c.s_binwidth, "Smoother bin width (odd)");
    sub->add_option("--s-max-scale", c.s_max_scale, "Finest J0 scales used");
    sub->add_option("--s-boundary-handle", s_boundary, "Boundary handling (true/false)");
    sub->add_option("--s-do-diff", s_do_diff, "Difference before the periodogram (true/false)");
    sub->add_option("--s-lag", c.s_lag, "Differencing lag");
    sub->add_option("--s-diff-number", c.s_diff_number, "Differencing order (1 or 2)");
    sub->add_option("--diff", diff_alias, "Shorthand: --s-do-diff true --s-lag <lag>");
    sub->add_flag("--s-floor", c.s_floor, "Floor negative spectrum estimates at zero");
  };
  auto add_trend = [&](CLI::App* sub) {
    sub->add_option("--t-est-type,--est-type", c.t_est_type, "linear or nonlinear");
    sub->add_option("--t-filter-number", c.t_filter_number, "Trend wavelet vanishing moments");
    sub->add_option("--t-family", c.t_family, "DaubExPhase or DaubLeAsymm");
    sub->add_option("--t-transform", c.t_transform, "dec or nondec");
    sub->add_option("--t-boundary-handle", t_boundary, "Boundary handling (true/false)");
    sub->add_option("--t-max-scale", c.t_max_scale, "Coarsest transform scale J0");
    sub->add_option("--t-ci", t_ci, "Compute pointwise intervals (true/false)");
    sub->add_option("--t-sig-lvl", c.t_sig_lvl, "Significance level alpha");
    sub->add_option("--t-reps,--reps", c.t_reps, "Bootstrap replicates");
    sub->add_option("--t-ci-type", c.t_ci_type, "normal, percentile or analytic");
    sub->add_option("--ci", ci_alias, "Shorthand: none, normal, percentile or analytic");
    sub->add_option("--t-thresh-type", c.t_thresh_type, "hard or soft");
    sub->add_option("--t-thresh-normal", t_thresh_normal, "Gaussian threshold sqrt(2 ln n) (true/false)");
    sub->add_option("--t-ci-max-scale", c.t_ci_max_scale,
                    "Spectrum depth for analytic intervals (default min(floor(log2 n), J0 + 2))");
  };
  auto add_lacf = [&](CLI::App* sub) {
    sub->add_option("--t-lacf-max-lag,--lag-max", c.t_lacf_max_lag, "Largest lag (default floor(10 ln n))");
  };

  auto* sim = app.add_subcommand("sim", "Simulate a TLSW series");
  add_common(sim);
  sim->add_option("--scenario", c.scenario, "Built-in scenario: x1 or x2");
  sim->add_option("--trend", c.trend_file, "Trend CSV (one value per row)");
  sim->add_option("--spec", c.spec_file, "Spectrum CSV (J rows x n columns)");
  sim->add_option("--n", c.sim_n, "Length for scenario x1 (power of two)");
  sim->add_option("--filter-number", c.filter_number, "Generating wavelet vanishing moments");
  sim->add_option("--family", c.family, "DaubExPhase or DaubLeAsymm");

  auto* spec = app.add_subcommand("spec", "Estimate the evolutionary wavelet spectrum");
  add_common(spec);
  add_input(spec);
  add_spectrum(spec);

  auto* trend = app.add_subcommand("trend", "Estimate the trend");
  add_common(trend);
  add_input(trend);
  add_spectrum(trend);
  add_trend(trend);
  add_lacf(trend);

  auto* lacf = app.add_subcommand("lacf", "Estimate local autocovariance and autocorrelation");
  add_common(lacf);
  add_input(lacf);
  add_spectrum(lacf);
  add_lacf(lacf);

  auto* analyze = app.add_subcommand("analyze", "Spectrum, trend and local autocovariance together");
  add_common(analyze);
  add_input(analyze);
  add_spectrum(analyze);
  add_trend(analyze);
  add_lacf(analyze);

  auto* plot = app.add_subcommand("plot", "Render SVG figures from analyze results");
  plot->add_option("--out-dir", c.out_dir, "Output directory");
  plot->add_option("--input", c.input, "Series CSV")->required();
  plot->add_option("--results-dir", c.results_dir, "Directory holding analyze outputs (default: out-dir)");
  plot->add_option("--scaling", c.scaling, "global or by-level");
  plot->add_option("--lacf-times", c.lacf_times, "Time indices for the autocorrelation plot")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    c.s_smooth = parse_bool(s_smooth);
    c.s_boundary_handle = parse_bool(s_boundary);
    c.s_do_diff = parse_bool(s_do_diff);
    c.t_boundary_handle = parse_bool(t_boundary);
    c.t_ci = parse_bool(t_ci);
    c.t_thresh_normal = parse_bool(t_thresh_normal);
    if (diff_alias) {
      c.s_do_diff = true;
      c.s_lag = *diff_alias;
    }
    if (ci_alias) {
      c.t_ci = *ci_alias != "none";
      if (c.t_ci) c.t_ci_type = *ci_alias;
    }

    CLI::App* chosen = app.get_subcommands().front();
    c.command = chosen->get_name();
    if (c.command == "sim") return cmd_sim(c);
    if (c.command == "spec") return cmd_spec(c);
    if (c.command == "trend") return cmd_trend(c);
    if (c.command == "lacf") return cmd_lacf(c);
    if (c.command == "analyze") return cmd_analyze(c);
    return cmd_plot(c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::Io ? kExitIo : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace tlsw::cli
