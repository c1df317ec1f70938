#include "ppgrow/model.hpp"

#include <cmath>
#include <numeric>

#include "ppgrow/errors.hpp"

namespace ppgrow {

void SeppParams::require_valid() const {
  if (!std::isfinite(eta) || eta < 0.0) {
    throw parameter_domain_error("baseline rate eta must be finite and >= 0");
  }
  if (!std::isfinite(k)) {
    throw parameter_domain_error("branching factor k must be finite");
  }
  kernel.require_valid();
}

double conditional_intensity(const SeppParams& params, const EventTimes& history,
                             double t) {
  params.require_valid();
  double excitation = 0.0;
  for (double ti : history) {
    if (ti >= t) break;  // history is sorted; only events strictly before t count
    excitation += params.kernel.density(t - ti);
  }
  return params.eta + params.k * excitation;
}

std::vector<double> compensator(const SeppParams& params, const EventTimes& times) {
  params.require_valid();
  if (times.empty()) {
    throw insufficient_data_error("compensator requires at least one event");
  }
  const std::size_t n = times.size();
  std::vector<double> out(n);

  if (params.kernel.family() == KernelFamily::exponential) {
    // sum_{j<i} G(T_i - T_j) = (i-1) - S_i with S_i = sum_{j<i} exp(-beta (T_i - T_j)),
    // and S satisfies the same one-step recursion as the intensity state.
    const double beta = params.kernel.param();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) s = std::exp(-beta * (times[i] - times[i - 1])) * (s + 1.0);
      out[i] = params.eta * times[i] +
               params.k * (static_cast<double>(i) - s);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        acc += params.kernel.integral(times[i] - times[j]);
      }
      out[i] = params.eta * times[i] + params.k * acc;
    }
  }
  return out;
}

double burstiness(const Iets& iets) {
  const std::size_t n = iets.size();
  if (n < 2) {
    throw insufficient_data_error("burstiness requires at least two inter-event times");
  }
  const double mean =
      std::accumulate(iets.values.begin(), iets.values.end(), 0.0) / static_cast<double>(n);
  if (!(mean > 0.0)) {
    throw degenerate_input_error("burstiness requires a positive mean inter-event time");
  }
  double ss = 0.0;
  for (double v : iets.values) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / static_cast<double>(n - 1));
  return (sigma - mean) / (sigma + mean);
}

std::vector<double> autocorrelation(const std::vector<double>& series,
                                    std::size_t max_lag) {
  if (max_lag < 1) {
    throw domain_error("autocorrelation requires max_lag >= 1");
  }
  if (series.size() <= max_lag) {
    throw insufficient_data_error("autocorrelation requires series length > max_lag");
  }
  const std::size_t n = series.size();
  const double mean =
      std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  double denom = 0.0;
  for (double v : series) denom += (v - mean) * (v - mean);
  if (denom == 0.0) {
    throw degenerate_input_error("autocorrelation of a constant series is undefined");
  }
  std::vector<double> rho(max_lag);
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double num = 0.0;
    for (std::size_t t = 0; t + h < n; ++t) {
      num += (series[t] - mean) * (series[t + h] - mean);
    }
    rho[h - 1] = num / denom;
  }
  return rho;
}

}  // namespace ppgrow
