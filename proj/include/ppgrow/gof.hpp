#pragma once

#include <map>
#include <vector>

#include "ppgrow/event_times.hpp"
#include "ppgrow/model.hpp"

namespace ppgrow {

struct KsResult {
  double statistic{0.0};
  std::size_t n{0};
  double p_value{1.0};
  // alpha -> accepted (true means the exponential hypothesis is not rejected;
  // by construction rejection happens exactly when p_value < alpha).
  std::map<double, bool> decisions;
  bool small_sample{false};    // n < 10: asymptotic p-value is a rough guide
  bool estimated_rate{false};  // rate was estimated from the sample (plug-in)
};

inline const std::vector<double> kDefaultAlphas{0.01, 0.05};

// Time-rescaling residuals: differences of the compensator evaluated at the
// event times. Under the fitted model these are i.i.d. unit-rate exponential.
// No stationarity guard — residuals of a flagged fit are still computed and
// the caller interprets them (nonpositive residuals will fail the KS stage).
// Requires at least two events.
[[nodiscard]] Iets transformed_iets(const SeppParams& params, const EventTimes& times);

// Two-sided Kolmogorov-Smirnov test of unit-rate exponentiality:
//   D = sup_x |F_n(x) - (1 - e^-x)|
// from the order statistics, p-value from the asymptotic series
//   p = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 n D^2)
// truncated once terms drop below 1e-12. Zero samples are legal (mass at 0
// inflates D naturally); negative samples are a domain error.
[[nodiscard]] KsResult ks_exp_unit(const std::vector<double>& samples,
                                   const std::vector<double>& alphas = kDefaultAlphas);

// Exponentiality with the rate estimated as 1/mean (its maximum-likelihood
// value): samples are rescaled by the estimated rate and passed through
// ks_exp_unit. No small-sample correction of the p-value is applied; the
// estimated_rate flag marks results whose null was data-dependent.
// A zero mean is a degenerate-input error.
[[nodiscard]] KsResult ks_exp_estimated_rate(
    const std::vector<double>& samples,
    const std::vector<double>& alphas = kDefaultAlphas);

struct AcceptanceRow {
  double alpha{0.0};
  std::size_t n_tested{0};
  std::size_t n_accepted{0};
  double fraction{0.0};
};

// Acceptance fractions over a batch of tests, one row per alpha.
[[nodiscard]] std::vector<AcceptanceRow> acceptance_table(
    const std::vector<KsResult>& results, const std::vector<double>& alphas);

}  // namespace ppgrow
