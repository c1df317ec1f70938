#pragma once

#include <vector>

#include "ppgrow/event_times.hpp"
#include "ppgrow/kernel.hpp"

namespace ppgrow {

// Self-exciting point process with conditional intensity
//
//   lambda(t | H_t) = eta + k * sum_{T_i < t} g(t - T_i)
//
// where eta >= 0 is the baseline rate (events/day), k is the branching
// factor, and g is a normalized TriggeringKernel. The process is stationary
// iff 0 <= k < 1; nothing here clamps k — estimators that land outside the
// stationary region report it through flags so the caller can see it.
struct SeppParams {
  double eta{0.0};
  double k{0.0};
  TriggeringKernel kernel{TriggeringKernel::exponential(1.0)};

  [[nodiscard]] bool stationary() const { return k >= 0.0 && k < 1.0; }
  // Throws parameter_domain_error for eta < 0 / non-finite values / invalid
  // kernel. Deliberately does NOT reject nonstationary k.
  void require_valid() const;
};

// lambda(t | history): history is restricted to events strictly before t.
[[nodiscard]] double conditional_intensity(const SeppParams& params,
                                           const EventTimes& history, double t);

// Integrated intensity Lambda(T_i) = ∫_0^{T_i} lambda(s) ds evaluated at every
// event time, via the closed-form kernel integral (O(n) for the exponential
// family, O(n^2) for the power law). Requires a nonempty sequence.
[[nodiscard]] std::vector<double> compensator(const SeppParams& params,
                                              const EventTimes& times);

// Burstiness B = (sigma - mean) / (sigma + mean) of the inter-event times,
// with sigma the sample standard deviation (divisor n-1). B = 0 for a Poisson
// process, -1 for a perfectly regular one, -> 1 for extreme burstiness.
// Requires at least two IETs with positive mean.
[[nodiscard]] double burstiness(const Iets& iets);

// Sample autocorrelation rho_1 .. rho_max_lag with the divisor-n convention:
// rho_h = sum_{t=1}^{n-h} (x_t - xbar)(x_{t+h} - xbar) / sum_t (x_t - xbar)^2.
// Requires series length > max_lag >= 1 and a non-constant series.
[[nodiscard]] std::vector<double> autocorrelation(const std::vector<double>& series,
                                                  std::size_t max_lag);

}  // namespace ppgrow
