#include "ppgrow/simulate.hpp"

#include <cmath>
#include <string>

#include "ppgrow/errors.hpp"
#include "ppgrow/rng.hpp"

namespace ppgrow {

void PiecewiseRate::require_valid() const {
  if (edges.size() < 2 || rates.size() + 1 != edges.size()) {
    throw domain_error("piecewise rate needs n+1 edges for n segments (n >= 1)");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i]) || (i > 0 && edges[i] < edges[i - 1])) {
      throw domain_error("piecewise rate edges must be finite and nondecreasing");
    }
  }
  for (double r : rates) {
    if (!std::isfinite(r) || r < 0.0) {
      throw domain_error("piecewise rates must be finite and >= 0");
    }
  }
}

namespace {

// Ogata thinning. The dominating intensity is lambda evaluated just after the
// current anchor point: with monotone-decreasing kernels the true intensity
// can only fall between events, so that value bounds lambda on the whole next
// candidate interval. The bound is refreshed after every candidate, accepted
// or not.
EventTimes sample_sepp(const SeppParams& params, std::optional<double> horizon,
                       std::optional<std::size_t> target_count, RngStream& rng) {
  params.require_valid();
  if (params.k < 0.0) {
    throw parameter_domain_error("simulation requires branching factor k >= 0");
  }
  if (horizon.has_value() == target_count.has_value()) {
    throw config_error("exactly one of horizon / target_count must be given");
  }
  if (horizon && !(*horizon >= 0.0 && std::isfinite(*horizon))) {
    throw domain_error("simulation horizon must be finite and >= 0");
  }
  if (target_count && (params.k >= 1.0 || params.eta <= 0.0)) {
    throw nonterminating_configuration_error(
        "event-count target requires eta > 0 and k < 1");
  }

  const bool exp_family = params.kernel.family() == KernelFamily::exponential;
  const double beta = params.kernel.param();

  std::vector<double> events;
  if (target_count) events.reserve(*target_count);
  double t = 0.0;
  double state = 0.0;  // exponential family: sum_i exp(-beta (t - T_i))

  auto excitation_at = [&](double at) {
    double acc = 0.0;
    for (double ti : events) acc += params.kernel.density(at - ti);
    return acc;
  };

  while (true) {
    if (target_count && events.size() >= *target_count) break;
    const double bound =
        params.eta + params.k * (exp_family ? beta * state : excitation_at(t));
    if (bound <= 0.0) break;  // eta == 0 and no excitation: nothing more can occur
    const double gap = rng.exponential(bound);
    const double cand = t + gap;
    if (horizon && cand >= *horizon) break;

    double decayed = state;
    double lambda_cand;
    if (exp_family) {
      decayed = state * std::exp(-beta * gap);
      lambda_cand = params.eta + params.k * beta * decayed;
    } else {
      lambda_cand = params.eta + params.k * excitation_at(cand);
    }

    if (rng.uniform() * bound < lambda_cand) {
      events.push_back(cand);
      decayed += 1.0;  // the new event contributes g(0) from now on
    }
    t = cand;
    state = decayed;
  }
  return EventTimes(std::move(events));
}

void append_nhpp(const PiecewiseRate& rate, RngStream& rng, std::vector<double>& out) {
  for (std::size_t i = 0; i < rate.rates.size(); ++i) {
    const double r = rate.rates[i];
    if (r <= 0.0) continue;
    double t = rate.edges[i];
    const double end = rate.edges[i + 1];
    while (true) {
      t += rng.exponential(r);
      if (t >= end) break;
      out.push_back(t);
    }
  }
}

}  // namespace

EventTimes simulate_sepp(const SeppParams& params, std::optional<double> horizon,
                         std::optional<std::size_t> target_count, std::uint64_t seed) {
  RngStream rng(seed, 0);
  return sample_sepp(params, horizon, target_count, rng);
}

EventTimes simulate_nhpp(const PiecewiseRate& rate, std::uint64_t seed) {
  rate.require_valid();
  RngStream rng(seed, 0);
  std::vector<double> out;
  append_nhpp(rate, rng, out);
  return EventTimes(std::move(out));
}

EventTimes simulate_three_phase(const ThreePhaseConfig& config) {
  if (!(config.startup_duration >= 0.0) || !std::isfinite(config.startup_duration)) {
    throw domain_error("startup duration must be finite and >= 0");
  }
  const double a = config.inactive_start_hour;
  const double b = config.inactive_end_hour;
  if (!(a >= 0.0 && a < 24.0 && b >= 0.0 && b < 24.0)) {
    throw domain_error("inactive window hours must lie in [0, 24)");
  }

  std::vector<double> events;
  {
    RngStream startup(config.seed, 0);
    EventTimes phase1 =
        sample_sepp(config.startup_params, config.startup_duration, std::nullopt, startup);
    events.assign(phase1.begin(), phase1.end());
  }

  const double first_day = std::ceil(config.startup_duration);
  for (std::size_t i = 0; i < config.daily_rates.size(); ++i) {
    const double day = first_day + static_cast<double>(i);
    const double rate = config.daily_rates[i];
    PiecewiseRate profile;
    if (a == b) {  // no inactive window
      profile.edges = {day, day + 1.0};
      profile.rates = {rate};
    } else if (a < b) {
      profile.edges = {day, day + a / 24.0, day + b / 24.0, day + 1.0};
      profile.rates = {rate, 0.0, rate};
    } else {  // window wraps past midnight: inactive before b and after a
      profile.edges = {day, day + b / 24.0, day + a / 24.0, day + 1.0};
      profile.rates = {0.0, rate, 0.0};
    }
    profile.require_valid();
    RngStream day_rng(config.seed, 1 + i);
    append_nhpp(profile, day_rng, events);
  }
  return EventTimes(std::move(events));
}

}  // namespace ppgrow
