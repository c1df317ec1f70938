#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ppgrow/event_times.hpp"
#include "ppgrow/model.hpp"

namespace ppgrow {

// Piecewise-constant rate over a contiguous horizon. Segment i covers
// [edges[i], edges[i+1]) at rates[i] events/day, so edges has exactly one
// more entry than rates and the segments tile the horizon with no gaps.
struct PiecewiseRate {
  std::vector<double> edges;
  std::vector<double> rates;

  [[nodiscard]] double start() const { return edges.front(); }
  [[nodiscard]] double end() const { return edges.back(); }
  // Throws domain_error when the shape or values are invalid.
  void require_valid() const;
};

// Generates a self-exciting process path by Ogata thinning with a
// piecewise-constant dominating intensity: the bound lambda(t+) is refreshed
// after every candidate, which is valid because both kernel families are
// monotone decreasing. Exactly one of horizon / target_count must be set.
// target_count requires eta > 0 and k < 1; otherwise the run cannot be
// guaranteed to terminate.
[[nodiscard]] EventTimes simulate_sepp(const SeppParams& params,
                                       std::optional<double> horizon,
                                       std::optional<std::size_t> target_count,
                                       std::uint64_t seed);

// Nonhomogeneous Poisson sample: per-segment homogeneous samples concatenated.
[[nodiscard]] EventTimes simulate_nhpp(const PiecewiseRate& rate, std::uint64_t seed);

// Synthetic three-phase stream used for round-trip validation:
//   phase 1: self-exciting startup on [0, startup_duration);
//   phase 2/3: one nonhomogeneous Poisson day per entry of daily_rates,
//     starting at ceil(startup_duration) so day boundaries sit at integer
//     multiples of 1 day from the origin. daily_rates[i] is the intensity
//     (events/day) in force during that day's active hours; intensity is zero
//     inside [inactive_start_hour, inactive_end_hour), which may wrap past
//     midnight. Equal start/end hours mean no inactive window.
struct ThreePhaseConfig {
  SeppParams startup_params;
  double startup_duration{60.0};
  std::vector<double> daily_rates;
  double inactive_start_hour{0.0};
  double inactive_end_hour{0.0};
  std::uint64_t seed{0};
};

[[nodiscard]] EventTimes simulate_three_phase(const ThreePhaseConfig& config);

}  // namespace ppgrow
