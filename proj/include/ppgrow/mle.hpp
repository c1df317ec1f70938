#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ppgrow/event_times.hpp"
#include "ppgrow/model.hpp"

namespace ppgrow {

struct LogLikelihood {
  double value{0.0};
  // True when some lambda(T_i) <= 0 was encountered (possible while probing
  // k < 0); value is then -inf.
  bool domain_violation{false};
};

// Log-likelihood of the observed events on [0, horizon]:
//   l = -∫_0^horizon lambda + sum_i log lambda(T_i),
// with the integral in closed form through the kernel CDF and, for the
// exponential family, the intensity terms through the O(n) recursion
//   A_1 = 0,  A_i = exp(-beta (T_i - T_{i-1})) (1 + A_{i-1}),
//   lambda(T_i) = eta + k beta A_i.
// The power-law family has no such recursion and costs O(n^2); it refuses
// windows above 20,000 events to keep that bounded.
// Requires horizon >= last event.
[[nodiscard]] LogLikelihood loglik(const SeppParams& params, const EventTimes& times,
                                   double horizon);

// Analytic gradient d l / d(eta, k, beta) — exponential family only.
[[nodiscard]] std::array<double, 3> loglik_grad_exp(const SeppParams& params,
                                                    const EventTimes& times,
                                                    double horizon);

struct MleBounds {
  double eta_lo{1e-8};
  double eta_hi{1e6};
  double k_lo{0.0};
  double k_hi{0.999};
  // Kernel parameter bounds default to the family box from kernel.hpp.
  double kernel_lo{0.0};
  double kernel_hi{0.0};
};

struct MleFit {
  SeppParams params;
  double loglik{0.0};
  bool converged{false};
  int n_starts_used{0};
  // Names of parameters pinned at a box bound: "eta", "k", "beta" / "gamma".
  std::vector<std::string> bounds_hit;
};

// Maximum-likelihood fit by a box-projected Nelder-Mead simplex over
// (log eta, k, log kernel-parameter), run from `n_starts` seeded random
// initializations (log-uniform eta, uniform k, log-uniform kernel parameter)
// plus the K=0 Poisson solution (eta = n/horizon) as a boundary candidate,
// so data truly generated at the bound pins there exactly.
// Requires at least 10 events.
[[nodiscard]] MleFit fit_mle(const EventTimes& times, double horizon,
                             KernelFamily family, const MleBounds& bounds = {},
                             int n_starts = 8, std::uint64_t seed = 0);

}  // namespace ppgrow
