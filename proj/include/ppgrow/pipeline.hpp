#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppgrow/daily.hpp"
#include "ppgrow/dates.hpp"
#include "ppgrow/gof.hpp"
#include "ppgrow/inar.hpp"
#include "ppgrow/ingest.hpp"

namespace ppgrow {

struct AnalysisConfig {
  std::string input_path;
  std::string out_dir;
  int tz_offset_minutes{0};
  std::optional<CivilDate> from_date;  // inclusive
  std::optional<CivilDate> to_date;    // exclusive
  std::size_t window_size{200};
  std::size_t p{kDefaultInarOrder};
  double delta{kDefaultInarDelta};
  KernelFamily family{KernelFamily::exponential};
  double inactive_start_hour{0.0};
  double inactive_end_hour{0.0};
  std::vector<double> alphas{0.01, 0.05};
  std::uint64_t seed{0};
  int threads{1};
  std::size_t breakdown_threshold{3};
  std::optional<std::uint64_t> jitter_seed;

  [[nodiscard]] ActiveHoursPolicy policy() const {
    return {inactive_start_hour, inactive_end_hour, tz_offset_minutes};
  }
  // Throws config_error on invalid settings.
  void require_valid() const;
};

// One observation window through the estimation + validation chain. Failed
// stages leave their fields empty and record the reason; a failure never
// aborts the batch.
struct WindowRow {
  std::size_t index{0};
  std::size_t n_events{0};
  double start_day_abs{0.0};  // local days since 1970-01-01
  double end_day_abs{0.0};
  double span_days{0.0};
  std::string start_date;
  std::optional<InarEstimate> estimate;
  std::optional<KsResult> ks;  // rescaled-residual exponentiality test
  double acf1{0.0};            // lag-1 autocorrelation of the residuals
  bool acf1_defined{false};
  bool flagged{false};  // k_hat < 0, k_hat >= 1, or solver failure
  std::string error;
};

struct BreakdownReport {
  std::size_t threshold{3};
  std::size_t n_flagged{0};
  // First window index that starts >= threshold consecutive flagged windows.
  std::optional<std::size_t> first_breakdown_window;
};

[[nodiscard]] BreakdownReport detect_breakdown(const std::vector<WindowRow>& rows,
                                               std::size_t threshold = 3);

struct StartupAnalysis {
  std::size_t window_size{0};
  std::size_t n_events_discarded{0};
  std::vector<WindowRow> rows;
  std::vector<AcceptanceRow> acceptance;  // over windows whose KS stage ran
  std::size_t n_windows_failed{0};        // rows without a KS result
  BreakdownReport breakdown;
};

[[nodiscard]] StartupAnalysis run_startup_analysis(const EventSeries& series,
                                                   const AnalysisConfig& config);

struct YearBurstiness {
  int year{0};
  bool computed{false};
  BurstinessComparison comparison;
  std::string note;
};

struct DailyAnalysis {
  std::vector<DailyRateEstimate> days;
  std::vector<AcceptanceRow> acceptance;  // all eligible days pooled
  std::vector<std::pair<int, std::vector<AcceptanceRow>>> acceptance_by_year;
  std::size_t n_days_excluded{0};  // KS skipped (fewer than 5 active events, ...)
  std::optional<std::vector<WeekdayMeanRate>> weekly;
  std::vector<YearBurstiness> burstiness_by_year;
};

[[nodiscard]] DailyAnalysis run_daily_analysis(const EventSeries& series,
                                               const AnalysisConfig& config);

struct ParseSummary {
  std::size_t n_records{0};
  std::size_t n_malformed{0};
  std::size_t n_comments{0};
};

// Reads, parses, converts and period-restricts the configured input.
// Unreadable input raises io_error; unusable content raises empty_input_error.
[[nodiscard]] EventSeries load_series(const AnalysisConfig& config,
                                      ParseSummary* summary = nullptr);

struct RunArtifacts {
  AnalysisConfig config;
  std::optional<ParseSummary> parse;
  EventSeries series;
  std::optional<StartupAnalysis> startup;
  std::optional<DailyAnalysis> daily;
  // Day the daily phase was taken to start when the full pipeline derived it
  // from the detected breakdown window.
  std::optional<CivilDate> daily_cutover;
};

// Writes the report set into out_dir: windows.tsv, days.tsv, acceptance.tsv,
// weekly_profile.tsv, burstiness.tsv, cumulative.tsv and manifest.json.
// Tables are tab-separated with fixed column order and deterministic number
// formatting; the manifest carries the only timestamp. On failure, files
// created by this call are removed and io_error is raised.
void emit_reports(const RunArtifacts& artifacts, const std::string& out_dir);

}  // namespace ppgrow
