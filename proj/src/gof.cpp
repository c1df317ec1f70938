#include "ppgrow/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppgrow/errors.hpp"

namespace ppgrow {

Iets transformed_iets(const SeppParams& params, const EventTimes& times) {
  if (times.size() < 2) {
    throw insufficient_data_error("time rescaling requires at least two events");
  }
  const std::vector<double> big_lambda = compensator(params, times);
  Iets out;
  out.values.resize(big_lambda.size() - 1);
  for (std::size_t i = 1; i < big_lambda.size(); ++i) {
    out.values[i - 1] = big_lambda[i] - big_lambda[i - 1];
  }
  return out;
}

namespace {

double ks_asymptotic_p(double d, std::size_t n) {
  const double nd2 = static_cast<double>(n) * d * d;
  // The series limit is 1 as nD^2 -> 0, approached faster than any power;
  // below this cutoff the deficit is far under machine epsilon.
  if (nd2 < 1e-10) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-2.0 * static_cast<double>(k) * static_cast<double>(k) * nd2);
    if (term < 1e-12) break;
    sum += sign * term;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_exp_unit(const std::vector<double>& samples,
                     const std::vector<double>& alphas) {
  if (samples.empty()) {
    throw insufficient_data_error("KS test requires at least one sample");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0.0) {
    throw domain_error("exponential KS test received a negative sample");
  }

  const std::size_t n = sorted.size();
  const double dn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = -std::expm1(-sorted[i]);
    const double upper = (static_cast<double>(i) + 1.0) / dn - cdf;  // step above
    const double lower = cdf - static_cast<double>(i) / dn;          // step below
    d = std::max({d, upper, lower});
  }

  KsResult res;
  res.statistic = d;
  res.n = n;
  res.p_value = ks_asymptotic_p(d, n);
  res.small_sample = n < 10;
  for (double alpha : alphas) {
    res.decisions[alpha] = !(res.p_value < alpha);
  }
  return res;
}

KsResult ks_exp_estimated_rate(const std::vector<double>& samples,
                               const std::vector<double>& alphas) {
  if (samples.empty()) {
    throw insufficient_data_error("KS test requires at least one sample");
  }
  for (double v : samples) {
    if (v < 0.0) throw domain_error("exponential KS test received a negative sample");
  }
  const double mean =
      std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  if (!(mean > 0.0)) {
    throw degenerate_input_error("rate estimation requires a positive sample mean");
  }
  std::vector<double> scaled(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) scaled[i] = samples[i] / mean;
  KsResult res = ks_exp_unit(scaled, alphas);
  res.estimated_rate = true;
  return res;
}

std::vector<AcceptanceRow> acceptance_table(const std::vector<KsResult>& results,
                                            const std::vector<double>& alphas) {
  std::vector<AcceptanceRow> table;
  table.reserve(alphas.size());
  for (double alpha : alphas) {
    AcceptanceRow row;
    row.alpha = alpha;
    row.n_tested = results.size();
    for (const KsResult& r : results) {
      if (!(r.p_value < alpha)) ++row.n_accepted;
    }
    row.fraction = results.empty()
                       ? 0.0
                       : static_cast<double>(row.n_accepted) / static_cast<double>(results.size());
    table.push_back(row);
  }
  return table;
}

}  // namespace ppgrow
