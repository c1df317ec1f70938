// Command-line driver for the point-process growth toolkit.
//
// Subcommands:
//   startup   SEPP window estimation + residual tests over count windows
//   daily     daily piecewise-Poisson analysis with an inactive-hours policy
//   full      startup analysis, breakdown detection, then daily analysis on
//             the post-breakdown period
//   simulate  synthetic edge-list generation (single-phase SEPP or the
//             three-phase startup/growth stream)
//
// Exit codes: 0 success, 1 fatal I/O, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppgrow/errors.hpp"
#include "ppgrow/ingest.hpp"
#include "ppgrow/pipeline.hpp"
#include "ppgrow/simulate.hpp"
#include "ppgrow/version.hpp"

namespace {

using namespace ppgrow;

struct CommonOpts {
  std::string input;
  std::string out;
  int tz_offset_min = 0;
  std::string from;
  std::string to;
  std::size_t window_size = 200;
  std::size_t p = kDefaultInarOrder;
  double delta_min = 5.0;
  std::string kernel = "exp";
  std::string inactive;
  std::vector<double> alphas;
  std::uint64_t seed = 0;
  int threads = 1;
  std::size_t breakdown_threshold = 3;
  std::optional<std::uint64_t> jitter_seed;
};

void add_common_options(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--input", opts->input, "edge-list file to analyze")->required();
  cmd->add_option("--out", opts->out, "output directory for report tables")->required();
  cmd->add_option("--tz-offset-min", opts->tz_offset_min,
                  "minutes added to timestamps to reach local time");
  cmd->add_option("--from", opts->from, "first local calendar day, inclusive (YYYY-MM-DD)");
  cmd->add_option("--to", opts->to, "local calendar day bound, exclusive (YYYY-MM-DD)");
  cmd->add_option("--window-size", opts->window_size, "events per estimation window");
  cmd->add_option("--p", opts->p, "autoregression order of the count regression");
  cmd->add_option("--delta-min", opts->delta_min, "count-bin width in minutes");
  cmd->add_option("--kernel", opts->kernel, "triggering kernel family")
      ->check(CLI::IsMember({"exp", "powerlaw"}));
  cmd->add_option("--inactive", opts->inactive,
                  "daily inactive window as START-END local hours, e.g. 1-8");
  cmd->add_option("--alpha", opts->alphas, "test level (repeatable)");
  cmd->add_option("--seed", opts->seed, "run seed recorded in the manifest");
  cmd->add_option("--threads", opts->threads, "worker threads for window/day fan-out");
  cmd->add_option("--breakdown-threshold", opts->breakdown_threshold,
                  "consecutive flagged windows that mark a model breakdown");
  cmd->add_option("--jitter-seed", opts->jitter_seed,
                  "if set, break duplicate timestamps with seeded sub-second jitter");
}

CivilDate parse_date_or_throw(const std::string& text, const char* flag) {
  const std::optional<CivilDate> parsed = parse_iso_date(text);
  if (!parsed) {
    throw config_error(std::string(flag) + " expects an ISO date (YYYY-MM-DD), got '" +
                       text + "'");
  }
  return *parsed;
}

std::pair<double, double> parse_inactive(const std::string& text) {
  double a = 0.0;
  double b = 0.0;
  char trailing = '\0';
  const int got = std::sscanf(text.c_str(), "%lf-%lf%c", &a, &b, &trailing);
  if (got != 2) {
    throw config_error("--inactive expects START-END local hours, e.g. 1-8; got '" +
                       text + "'");
  }
  return {a, b};
}

AnalysisConfig build_config(const CommonOpts& opts) {
  AnalysisConfig config;
  config.input_path = opts.input;
  config.out_dir = opts.out;
  config.tz_offset_minutes = opts.tz_offset_min;
  if (!opts.from.empty()) config.from_date = parse_date_or_throw(opts.from, "--from");
  if (!opts.to.empty()) config.to_date = parse_date_or_throw(opts.to, "--to");
  config.window_size = opts.window_size;
  config.p = opts.p;
  config.delta = opts.delta_min / (24.0 * 60.0);
  config.family = opts.kernel == "powerlaw" ? KernelFamily::power_law
                                            : KernelFamily::exponential;
  if (!opts.inactive.empty()) {
    const auto [a, b] = parse_inactive(opts.inactive);
    config.inactive_start_hour = a;
    config.inactive_end_hour = b;
  }
  if (!opts.alphas.empty()) config.alphas = opts.alphas;
  config.seed = opts.seed;
  config.threads = opts.threads;
  config.breakdown_threshold = opts.breakdown_threshold;
  config.jitter_seed = opts.jitter_seed;
  config.require_valid();
  return config;
}

int run_startup_cmd(const CommonOpts& opts) {
  const AnalysisConfig config = build_config(opts);
  RunArtifacts artifacts;
  artifacts.config = config;
  ParseSummary parse;
  artifacts.series = load_series(config, &parse);
  artifacts.parse = parse;
  artifacts.startup = run_startup_analysis(artifacts.series, config);
  emit_reports(artifacts, config.out_dir);
  std::cout << "windows: " << artifacts.startup->rows.size()
            << ", flagged: " << artifacts.startup->breakdown.n_flagged << '\n';
  return 0;
}

int run_daily_cmd(const CommonOpts& opts) {
  const AnalysisConfig config = build_config(opts);
  RunArtifacts artifacts;
  artifacts.config = config;
  ParseSummary parse;
  artifacts.series = load_series(config, &parse);
  artifacts.parse = parse;
  artifacts.daily = run_daily_analysis(artifacts.series, config);
  emit_reports(artifacts, config.out_dir);
  std::cout << "days: " << artifacts.daily->days.size()
            << ", excluded: " << artifacts.daily->n_days_excluded << '\n';
  return 0;
}

int run_full_cmd(const CommonOpts& opts) {
  const AnalysisConfig config = build_config(opts);
  RunArtifacts artifacts;
  artifacts.config = config;
  ParseSummary parse;
  artifacts.series = load_series(config, &parse);
  artifacts.parse = parse;
  artifacts.startup = run_startup_analysis(artifacts.series, config);

  // The daily phase starts the day after the first breakdown window begins;
  // without a detected breakdown the whole period is analyzed daily as well.
  EventSeries daily_series = artifacts.series;
  if (artifacts.startup->breakdown.first_breakdown_window) {
    const WindowRow& row =
        artifacts.startup->rows[*artifacts.startup->breakdown.first_breakdown_window];
    const auto cutover =
        static_cast<std::int64_t>(std::floor(row.start_day_abs)) + 1;
    artifacts.daily_cutover = civil_from_days(cutover);
    const double last_abs = artifacts.series.origin_day +
                            (artifacts.series.times.empty()
                                 ? 0.0
                                 : artifacts.series.times.back());
    const auto last_day = static_cast<std::int64_t>(std::floor(last_abs));
    if (cutover <= last_day) {
      daily_series = restrict_period(artifacts.series, *artifacts.daily_cutover,
                                     civil_from_days(last_day + 1));
    } else {
      daily_series = EventSeries{EventTimes{}, static_cast<double>(cutover)};
    }
  }
  artifacts.daily = run_daily_analysis(daily_series, config);
  emit_reports(artifacts, config.out_dir);

  std::cout << "windows: " << artifacts.startup->rows.size() << ", breakdown: ";
  if (artifacts.daily_cutover) {
    std::cout << "window " << *artifacts.startup->breakdown.first_breakdown_window
              << " -> daily from " << format_date(*artifacts.daily_cutover);
  } else {
    std::cout << "none";
  }
  std::cout << ", days: " << artifacts.daily->days.size() << '\n';
  return 0;
}

struct SimulateOpts {
  std::string out;
  double eta = 20.0;
  double k = 0.5;
  std::string kernel = "exp";
  double kernel_param = 40.0;
  std::optional<double> horizon;
  std::optional<std::size_t> target_count;
  bool three_phase = false;
  double startup_days = 60.0;
  std::size_t n_days = 300;
  std::vector<double> daily_rates;
  std::string inactive;
  std::uint64_t seed = 0;
  std::int64_t origin_epoch = 1104537600;  // 2005-01-01T00:00:00Z
};

int run_simulate_cmd(const SimulateOpts& opts) {
  TriggeringKernel kernel = opts.kernel == "powerlaw"
                                ? TriggeringKernel::power_law(opts.kernel_param)
                                : TriggeringKernel::exponential(opts.kernel_param);
  SeppParams params;
  params.eta = opts.eta;
  params.k = opts.k;
  params.kernel = kernel;

  EventTimes times;
  if (opts.three_phase) {
    if (opts.daily_rates.empty()) {
      throw config_error("--three-phase requires at least one --daily-rate");
    }
    ThreePhaseConfig config;
    config.startup_params = params;
    config.startup_duration = opts.startup_days;
    config.daily_rates.reserve(opts.n_days);
    for (std::size_t i = 0; i < opts.n_days; ++i) {
      config.daily_rates.push_back(opts.daily_rates[i % opts.daily_rates.size()]);
    }
    if (!opts.inactive.empty()) {
      const auto [a, b] = parse_inactive(opts.inactive);
      config.inactive_start_hour = a;
      config.inactive_end_hour = b;
    }
    config.seed = opts.seed;
    times = simulate_three_phase(config);
  } else {
    if (opts.horizon.has_value() == opts.target_count.has_value()) {
      throw config_error("simulate needs exactly one of --horizon-days, --target-count");
    }
    times = simulate_sepp(params, opts.horizon, opts.target_count, opts.seed);
  }

  std::ofstream out(opts.out);
  if (!out) throw io_error("cannot create " + opts.out);
  write_edge_list(out, times, opts.origin_epoch);
  out.flush();
  if (!out) throw io_error("write failure on " + opts.out);
  std::cout << "events: " << times.size() << " -> " << opts.out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-process growth analysis for timestamped edge streams"};
  app.set_version_flag("--version", std::string(ppgrow::kVersion));
  app.require_subcommand(1);

  CommonOpts startup_opts;
  CommonOpts daily_opts;
  CommonOpts full_opts;
  SimulateOpts sim_opts;

  CLI::App* startup_cmd =
      app.add_subcommand("startup", "self-exciting window analysis of the startup phase");
  add_common_options(startup_cmd, &startup_opts);

  CLI::App* daily_cmd =
      app.add_subcommand("daily", "daily Poisson analysis with inactive hours");
  add_common_options(daily_cmd, &daily_opts);

  CLI::App* full_cmd =
      app.add_subcommand("full", "startup analysis, breakdown detection, then daily");
  add_common_options(full_cmd, &full_opts);

  CLI::App* sim_cmd = app.add_subcommand("simulate", "write a synthetic edge list");
  sim_cmd->add_option("--out", sim_opts.out, "output edge-list file")->required();
  sim_cmd->add_option("--eta", sim_opts.eta, "baseline rate, events/day");
  sim_cmd->add_option("--k", sim_opts.k, "branching factor");
  sim_cmd->add_option("--kernel", sim_opts.kernel, "triggering kernel family")
      ->check(CLI::IsMember({"exp", "powerlaw"}));
  sim_cmd->add_option("--kernel-param", sim_opts.kernel_param,
                      "decay rate (exp, 1/day) or tail exponent (powerlaw)");
  sim_cmd->add_option("--horizon-days", sim_opts.horizon, "simulate on [0, horizon)");
  sim_cmd->add_option("--target-count", sim_opts.target_count,
                      "simulate until this many events");
  sim_cmd->add_flag("--three-phase", sim_opts.three_phase,
                    "startup phase followed by daily Poisson phases");
  sim_cmd->add_option("--startup-days", sim_opts.startup_days,
                      "length of the self-exciting startup phase");
  sim_cmd->add_option("--n-days", sim_opts.n_days, "number of daily phases to generate");
  sim_cmd->add_option("--daily-rate", sim_opts.daily_rates,
                      "daily intensity in events/day, cycled over days (repeatable)");
  sim_cmd->add_option("--inactive", sim_opts.inactive,
                      "daily inactive window as START-END local hours");
  sim_cmd->add_option("--seed", sim_opts.seed, "simulation seed");
  sim_cmd->add_option("--origin-epoch", sim_opts.origin_epoch,
                      "UNIX epoch seconds assigned to t = 0");

  try {
    app.parse(argc, argv);
    if (startup_cmd->parsed()) return run_startup_cmd(startup_opts);
    if (daily_cmd->parsed()) return run_daily_cmd(daily_opts);
    if (full_cmd->parsed()) return run_full_cmd(full_opts);
    if (sim_cmd->parsed()) return run_simulate_cmd(sim_opts);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ppgrow::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ppgrow::empty_input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ppgrow::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ppgrow::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
}
