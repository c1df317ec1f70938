#include "ppgrow/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ppgrow/errors.hpp"
#include "ppgrow/model.hpp"
#include "ppgrow/parallel.hpp"
#include "ppgrow/version.hpp"

namespace fs = std::filesystem;

namespace ppgrow {

void AnalysisConfig::require_valid() const {
  if (window_size < 2) throw config_error("window size must be at least 2 events");
  if (p < 1) throw config_error("autoregression order p must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw config_error("delta must be > 0");
  if (alphas.empty()) throw config_error("at least one test level is required");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw config_error("test levels must lie in (0, 1)");
  }
  const auto hour_ok = [](double h) { return std::isfinite(h) && h >= 0.0 && h < 24.0; };
  if (!hour_ok(inactive_start_hour) || !hour_ok(inactive_end_hour)) {
    throw config_error("inactive window hours must lie in [0, 24)");
  }
  if (threads < 1) throw config_error("thread count must be >= 1");
  if (breakdown_threshold < 1) throw config_error("breakdown threshold must be >= 1");
  if (from_date && to_date &&
      days_from_civil(*to_date) <= days_from_civil(*from_date)) {
    throw config_error("the analysis period is empty");
  }
}

BreakdownReport detect_breakdown(const std::vector<WindowRow>& rows,
                                 std::size_t threshold) {
  if (threshold < 1) throw config_error("breakdown threshold must be >= 1");
  BreakdownReport report;
  report.threshold = threshold;
  std::size_t run = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].flagged) {
      ++report.n_flagged;
      ++run;
      if (run == threshold && !report.first_breakdown_window) {
        report.first_breakdown_window = i + 1 - threshold;
      }
    } else {
      run = 0;
    }
  }
  return report;
}

StartupAnalysis run_startup_analysis(const EventSeries& series,
                                     const AnalysisConfig& config) {
  config.require_valid();
  const CountWindowSet set = windows_by_count(series.times, config.window_size);

  StartupAnalysis out;
  out.window_size = config.window_size;
  out.n_events_discarded = set.n_discarded;
  out.rows.resize(set.windows.size());

  parallel_for(set.windows.size(), config.threads, [&](std::size_t i) {
    const CountWindow& w = set.windows[i];
    WindowRow row;
    row.index = w.index;
    row.n_events = w.times.size();
    row.start_day_abs = series.origin_day + w.start_offset;
    row.end_day_abs = series.origin_day + w.end_offset;
    row.span_days = w.end_offset - w.start_offset;
    row.start_date = format_date(static_cast<std::int64_t>(std::floor(row.start_day_abs)));

    try {
      row.estimate = estimate_window(w.times, config.p, config.delta, config.family);
      const InarEstimate& est = *row.estimate;
      row.flagged = est.k_hat < 0.0 || est.k_hat >= 1.0 || est.flags.solver_failed;

      SeppParams fitted;
      fitted.eta = est.eta_hat;
      fitted.k = est.k_hat;
      fitted.kernel = est.kernel_fit ? est.kernel_fit->kernel
                                     : TriggeringKernel::exponential(1.0);
      try {
        const Iets residuals = transformed_iets(fitted, w.times);
        row.ks = ks_exp_unit(residuals.values, config.alphas);
        try {
          row.acf1 = autocorrelation(residuals.values, 1).front();
          row.acf1_defined = true;
        } catch (const error&) {
          // Constant residuals: leave the diagnostic undefined.
        }
      } catch (const error& e) {
        row.error = std::string("model validation failed: ") + e.what();
      }
    } catch (const error& e) {
      // Estimation failure is itself a model-breakdown signal for this window.
      row.error = std::string("estimation failed: ") + e.what();
      row.flagged = true;
    }
    out.rows[i] = std::move(row);
  });

  std::vector<KsResult> tested;
  for (const WindowRow& row : out.rows) {
    if (row.ks) {
      tested.push_back(*row.ks);
    } else {
      ++out.n_windows_failed;
    }
  }
  out.acceptance = acceptance_table(tested, config.alphas);
  out.breakdown = detect_breakdown(out.rows, config.breakdown_threshold);
  return out;
}

DailyAnalysis run_daily_analysis(const EventSeries& series, const AnalysisConfig& config) {
  config.require_valid();
  const ActiveHoursPolicy policy = config.policy();
  const std::vector<DayEvents> buckets = split_days(series.times, series.origin_day, policy);

  DailyAnalysis out;
  out.days.resize(buckets.size());
  parallel_for(buckets.size(), config.threads, [&](std::size_t i) {
    out.days[i] = daily_rate(buckets[i], policy, config.alphas);
  });

  std::vector<KsResult> pooled;
  std::map<int, std::vector<KsResult>> by_year;
  for (const DailyRateEstimate& day : out.days) {
    if (day.ks) {
      pooled.push_back(*day.ks);
      by_year[civil_from_days(day.civil_day).year].push_back(*day.ks);
    } else {
      ++out.n_days_excluded;
    }
  }
  out.acceptance = acceptance_table(pooled, config.alphas);
  for (const auto& [year, results] : by_year) {
    out.acceptance_by_year.emplace_back(year, acceptance_table(results, config.alphas));
  }
  if (out.days.size() >= 7) out.weekly = weekly_profile(out.days);

  if (!out.days.empty()) {
    const int first_year = civil_from_days(out.days.front().civil_day).year;
    const int last_year = civil_from_days(out.days.back().civil_day).year;
    for (int year = first_year; year <= last_year; ++year) {
      YearBurstiness yb;
      yb.year = year;
      const std::int64_t y0 = days_from_civil({year, 1, 1});
      const std::int64_t y1 = days_from_civil({year + 1, 1, 1});
      try {
        yb.comparison =
            burstiness_comparison(series.times, series.origin_day, policy, y0, y1);
        yb.computed = true;
      } catch (const error& e) {
        yb.note = e.what();
      }
      out.burstiness_by_year.push_back(std::move(yb));
    }
  }
  return out;
}

EventSeries load_series(const AnalysisConfig& config, ParseSummary* summary) {
  config.require_valid();
  std::ifstream in(config.input_path);
  if (!in) throw io_error("cannot open input: " + config.input_path);
  const ParseResult parsed = parse_edge_list(in);
  if (summary) {
    summary->n_records = parsed.records.size();
    summary->n_malformed = parsed.malformed.size();
    summary->n_comments = parsed.n_comment_lines;
  }
  EventSeries series =
      to_event_times(parsed.records, config.tz_offset_minutes, config.jitter_seed);
  if (config.from_date || config.to_date) {
    const CivilDate from = config.from_date.value_or(
        civil_from_days(static_cast<std::int64_t>(std::floor(series.origin_day))));
    const CivilDate to = config.to_date.value_or(civil_from_days(
        static_cast<std::int64_t>(std::floor(series.origin_day +
                                             (series.times.empty() ? 0.0
                                                                   : series.times.back()))) +
        1));
    series = restrict_period(series, from, to);
  }
  return series;
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string alpha_column(double alpha) { return "accept_" + fmt(alpha); }

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string flag_list(const InarDiagnosticFlags& f) {
  std::string s;
  const auto add = [&s](const char* name) {
    if (!s.empty()) s += ';';
    s += name;
  };
  if (f.k_negative) add("k_negative");
  if (f.k_ge_one) add("k_ge_one");
  if (f.solver_failed) add("solver_failed");
  if (f.singular_design) add("singular_design");
  if (f.zero_bin_warning) add("zero_bin_warning");
  if (f.low_signal) add("low_signal");
  return s.empty() ? "-" : s;
}

std::string dash_if_empty(const std::string& s) { return s.empty() ? "-" : s; }

class ReportWriter {
 public:
  explicit ReportWriter(const fs::path& dir) : dir_(dir) {}

  std::ofstream open(const std::string& name) {
    const fs::path path = dir_ / name;
    std::ofstream out(path);
    if (!out) throw io_error("cannot create " + path.string());
    created_.push_back(path);
    return out;
  }

  void finish(std::ofstream& out, const std::string& name) {
    out.flush();
    if (!out) throw io_error("write failure on " + name);
  }

  void discard_all() {
    std::error_code ec;
    for (const fs::path& p : created_) fs::remove(p, ec);
  }

  [[nodiscard]] std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(created_.size());
    for (const fs::path& p : created_) out.push_back(p.filename().string());
    return out;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> created_;
};

void write_windows_table(std::ofstream& out, const StartupAnalysis& startup,
                         const std::vector<double>& alphas) {
  out << "index\tn_events\tstart_date\tstart_day\tend_day\tspan_days\teta_hat\tk_hat"
         "\tkernel_param\tkernel_rss\tkernel_at_bound\tls_rss\tzero_bin_fraction"
         "\tks_n\tks_d\tks_p";
  for (double a : alphas) out << '\t' << alpha_column(a);
  out << "\tacf1\tflags\tflagged\terror\n";

  for (const WindowRow& row : startup.rows) {
    out << row.index << '\t' << row.n_events << '\t' << row.start_date << '\t'
        << fmt(row.start_day_abs) << '\t' << fmt(row.end_day_abs) << '\t'
        << fmt(row.span_days) << '\t';
    if (row.estimate) {
      const InarEstimate& est = *row.estimate;
      out << fmt(est.eta_hat) << '\t' << fmt(est.k_hat) << '\t';
      if (est.kernel_fit) {
        out << fmt(est.kernel_fit->kernel.param()) << '\t'
            << fmt(est.kernel_fit->residual_ss) << '\t'
            << (est.kernel_fit->at_bound ? 1 : 0) << '\t';
      } else {
        out << "-\t-\t-\t";
      }
      out << fmt(est.ls_residual_ss) << '\t' << fmt(est.zero_bin_fraction) << '\t';
    } else {
      out << "-\t-\t-\t-\t-\t-\t-\t";
    }
    if (row.ks) {
      out << row.ks->n << '\t' << fmt(row.ks->statistic) << '\t' << fmt(row.ks->p_value);
      for (double a : alphas) out << '\t' << (row.ks->decisions.at(a) ? 1 : 0);
    } else {
      out << "-\t-\t-";
      for (std::size_t i = 0; i < alphas.size(); ++i) out << "\t-";
    }
    out << '\t' << (row.acf1_defined ? fmt(row.acf1) : "-") << '\t'
        << (row.estimate ? flag_list(row.estimate->flags) : "-") << '\t'
        << (row.flagged ? 1 : 0) << '\t' << dash_if_empty(row.error) << '\n';
  }
}

void write_days_table(std::ofstream& out, const DailyAnalysis& daily,
                      const std::vector<double>& alphas) {
  out << "civil_day\tdate\tweekday\tn_total\tn_active\tactive_hours\trate_per_hour"
         "\trate_per_day\tks_n\tks_d\tks_p";
  for (double a : alphas) out << '\t' << alpha_column(a);
  out << "\tks_skipped\tskip_reason\n";
  for (const DailyRateEstimate& day : daily.days) {
    out << day.civil_day << '\t' << day.date_label << '\t' << weekday_name(day.iso_weekday)
        << '\t' << day.n_total << '\t' << day.n_active << '\t' << fmt(day.active_hours)
        << '\t' << fmt(day.rate_per_hour) << '\t' << fmt(day.rate_per_day) << '\t';
    if (day.ks) {
      out << day.ks->n << '\t' << fmt(day.ks->statistic) << '\t' << fmt(day.ks->p_value);
      for (double a : alphas) out << '\t' << (day.ks->decisions.at(a) ? 1 : 0);
    } else {
      out << "-\t-\t-";
      for (std::size_t i = 0; i < alphas.size(); ++i) out << "\t-";
    }
    out << '\t' << (day.ks_skipped ? 1 : 0) << '\t' << dash_if_empty(day.ks_skip_reason)
        << '\n';
  }
}

void write_acceptance_rows(std::ofstream& out, const std::string& scope,
                           const std::vector<AcceptanceRow>& rows) {
  for (const AcceptanceRow& row : rows) {
    out << scope << '\t' << fmt(row.alpha) << '\t' << row.n_tested << '\t'
        << row.n_accepted << '\t' << fmt(row.fraction) << '\n';
  }
}

}  // namespace

void emit_reports(const RunArtifacts& artifacts, const std::string& out_dir) {
  const AnalysisConfig& config = artifacts.config;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw io_error("cannot create output directory " + out_dir);

  ReportWriter writer{fs::path(out_dir)};
  try {
    if (artifacts.startup) {
      auto out = writer.open("windows.tsv");
      write_windows_table(out, *artifacts.startup, config.alphas);
      writer.finish(out, "windows.tsv");
    }
    if (artifacts.daily) {
      auto out = writer.open("days.tsv");
      write_days_table(out, *artifacts.daily, config.alphas);
      writer.finish(out, "days.tsv");

      if (artifacts.daily->weekly) {
        auto profile = writer.open("weekly_profile.tsv");
        profile << "iso_weekday\tname\tmean_rate_per_hour\tmean_rate_per_day\tn_days\n";
        for (const WeekdayMeanRate& row : *artifacts.daily->weekly) {
          profile << row.iso_weekday << '\t' << row.name << '\t'
                  << fmt(row.mean_rate_per_hour) << '\t' << fmt(row.mean_rate_per_day)
                  << '\t' << row.n_days << '\n';
        }
        writer.finish(profile, "weekly_profile.tsv");
      }

      auto bursty = writer.open("burstiness.tsv");
      bursty << "year\tb_all\tb_active\tn_iets_all\tn_iets_active\tnote\n";
      for (const YearBurstiness& yb : artifacts.daily->burstiness_by_year) {
        bursty << yb.year << '\t';
        if (yb.computed) {
          bursty << fmt(yb.comparison.b_all) << '\t' << fmt(yb.comparison.b_active) << '\t'
                 << yb.comparison.n_iets_all << '\t' << yb.comparison.n_iets_active;
        } else {
          bursty << "-\t-\t-\t-";
        }
        bursty << '\t' << dash_if_empty(yb.note) << '\n';
      }
      writer.finish(bursty, "burstiness.tsv");
    }

    if (artifacts.startup || artifacts.daily) {
      auto acc = writer.open("acceptance.tsv");
      acc << "scope\talpha\tn_tested\tn_accepted\tfraction\n";
      if (artifacts.startup) {
        write_acceptance_rows(acc, "startup", artifacts.startup->acceptance);
      }
      if (artifacts.daily) {
        write_acceptance_rows(acc, "daily:ALL", artifacts.daily->acceptance);
        for (const auto& [year, rows] : artifacts.daily->acceptance_by_year) {
          write_acceptance_rows(acc, "daily:" + std::to_string(year), rows);
        }
      }
      writer.finish(acc, "acceptance.tsv");
    }

    {
      const ActiveHoursPolicy policy = config.policy();
      auto cum = writer.open("cumulative.tsv");
      cum << "abs_day\tdate\thour\tcum_count\tsegment\n";
      std::size_t count = 0;
      for (double t : artifacts.series.times) {
        const double abs_day = artifacts.series.origin_day + t;
        const auto day = static_cast<std::int64_t>(std::floor(abs_day));
        const double hour = (abs_day - static_cast<double>(day)) * 24.0;
        ++count;
        cum << fmt(abs_day) << '\t' << format_date(day) << '\t' << fmt(hour) << '\t'
            << count << '\t' << (policy.is_inactive(hour) ? "inactive" : "active") << '\n';
      }
      writer.finish(cum, "cumulative.tsv");
    }

    {
      nlohmann::json manifest;
      manifest["tool_version"] = kVersion;
      manifest["generated_at"] = utc_timestamp();

      nlohmann::json cfg;
      cfg["input_path"] = config.input_path;
      cfg["out_dir"] = config.out_dir;
      cfg["tz_offset_minutes"] = config.tz_offset_minutes;
      cfg["from_date"] = config.from_date ? format_date(*config.from_date) : "";
      cfg["to_date"] = config.to_date ? format_date(*config.to_date) : "";
      cfg["window_size"] = config.window_size;
      cfg["p"] = config.p;
      cfg["delta_days"] = config.delta;
      cfg["kernel_family"] = family_name(config.family);
      cfg["inactive_start_hour"] = config.inactive_start_hour;
      cfg["inactive_end_hour"] = config.inactive_end_hour;
      cfg["alphas"] = config.alphas;
      cfg["seed"] = config.seed;
      cfg["threads"] = config.threads;
      cfg["breakdown_threshold"] = config.breakdown_threshold;
      cfg["jitter_seed"] =
          config.jitter_seed ? nlohmann::json(*config.jitter_seed) : nlohmann::json();
      manifest["config"] = cfg;

      if (artifacts.parse) {
        manifest["parse"] = {{"n_records", artifacts.parse->n_records},
                             {"n_malformed", artifacts.parse->n_malformed},
                             {"n_comments", artifacts.parse->n_comments}};
      }
      nlohmann::json series;
      series["n_events"] = artifacts.series.times.size();
      series["origin_day"] = artifacts.series.origin_day;
      if (!artifacts.series.times.empty()) {
        series["first_date"] = format_date(
            static_cast<std::int64_t>(std::floor(artifacts.series.origin_day)));
        series["last_date"] = format_date(static_cast<std::int64_t>(
            std::floor(artifacts.series.origin_day + artifacts.series.times.back())));
      }
      manifest["series"] = series;

      if (artifacts.startup) {
        nlohmann::json s;
        s["n_windows"] = artifacts.startup->rows.size();
        s["window_size"] = artifacts.startup->window_size;
        s["n_events_discarded"] = artifacts.startup->n_events_discarded;
        s["n_windows_failed"] = artifacts.startup->n_windows_failed;
        s["breakdown"] = {
            {"threshold", artifacts.startup->breakdown.threshold},
            {"n_flagged", artifacts.startup->breakdown.n_flagged},
            {"first_breakdown_window",
             artifacts.startup->breakdown.first_breakdown_window
                 ? nlohmann::json(*artifacts.startup->breakdown.first_breakdown_window)
                 : nlohmann::json()}};
        manifest["startup"] = s;
      }
      if (artifacts.daily) {
        manifest["daily"] = {{"n_days", artifacts.daily->days.size()},
                             {"n_days_excluded", artifacts.daily->n_days_excluded}};
      }
      manifest["daily_cutover"] =
          artifacts.daily_cutover ? format_date(*artifacts.daily_cutover) : "";
      manifest["files"] = writer.names();

      auto out = writer.open("manifest.json");
      out << manifest.dump(2) << '\n';
      writer.finish(out, "manifest.json");
    }
  } catch (const io_error&) {
    writer.discard_all();
    throw;
  } catch (const std::exception& e) {
    writer.discard_all();
    throw io_error(std::string("report emission failed: ") + e.what());
  }
}

}  // namespace ppgrow
