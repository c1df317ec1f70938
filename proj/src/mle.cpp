#include "ppgrow/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ppgrow/errors.hpp"
#include "ppgrow/rng.hpp"

namespace ppgrow {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kPowerLawEventCeiling = 20000;

void check_horizon(const EventTimes& times, double horizon) {
  if (!std::isfinite(horizon) || horizon < 0.0) {
    throw domain_error("likelihood horizon must be finite and >= 0");
  }
  if (!times.empty() && horizon < times.back()) {
    throw domain_error("likelihood horizon must not precede the last event");
  }
}

}  // namespace

LogLikelihood loglik(const SeppParams& params, const EventTimes& times, double horizon) {
  params.require_valid();
  check_horizon(times, horizon);

  const std::size_t n = times.size();
  double integral = params.eta * horizon;
  double log_sum = 0.0;
  bool violated = false;

  if (params.kernel.family() == KernelFamily::exponential) {
    const double beta = params.kernel.param();
    double a = 0.0;  // A_i recursion state
    for (std::size_t i = 0; i < n && !violated; ++i) {
      if (i > 0) a = std::exp(-beta * (times[i] - times[i - 1])) * (1.0 + a);
      const double lambda_i = params.eta + params.k * beta * a;
      if (lambda_i <= 0.0) {
        violated = true;
        break;
      }
      log_sum += std::log(lambda_i);
      integral += params.k * params.kernel.integral(horizon - times[i]);
    }
  } else {
    if (n > kPowerLawEventCeiling) {
      throw domain_error("power-law likelihood is limited to 20000 events per window");
    }
    for (std::size_t i = 0; i < n && !violated; ++i) {
      double excitation = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        excitation += params.kernel.density(times[i] - times[j]);
      }
      const double lambda_i = params.eta + params.k * excitation;
      if (lambda_i <= 0.0) {
        violated = true;
        break;
      }
      log_sum += std::log(lambda_i);
      integral += params.k * params.kernel.integral(horizon - times[i]);
    }
  }

  if (violated) return {kNegInf, true};
  return {log_sum - integral, false};
}

std::array<double, 3> loglik_grad_exp(const SeppParams& params, const EventTimes& times,
                                      double horizon) {
  params.require_valid();
  if (params.kernel.family() != KernelFamily::exponential) {
    throw domain_error("analytic gradient is available for the exponential family only");
  }
  check_horizon(times, horizon);

  const double beta = params.kernel.param();
  const double k = params.k;
  double d_eta = -horizon;
  double d_k = 0.0;
  double d_beta = 0.0;
  double a = 0.0;   // A_i = sum_{j<i} exp(-beta (T_i - T_j))
  double ad = 0.0;  // dA_i/dbeta

  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) {
      const double gap = times[i] - times[i - 1];
      const double decay = std::exp(-beta * gap);
      ad = decay * (ad - gap * (1.0 + a));
      a = decay * (1.0 + a);
    }
    const double lambda_i = params.eta + k * beta * a;
    d_eta += 1.0 / lambda_i;
    d_k += beta * a / lambda_i;
    d_beta += k * (a + beta * ad) / lambda_i;

    const double tail = horizon - times[i];
    d_k -= -std::expm1(-beta * tail);            // ∂/∂k of k (1 - e^{-beta tail})
    d_beta -= k * tail * std::exp(-beta * tail);  // ∂/∂beta of the same term
  }
  return {d_eta, d_k, d_beta};
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 clamp_to(const Vec3& z, const Vec3& lo, const Vec3& hi) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = std::clamp(z[i], lo[i], hi[i]);
  return out;
}

struct NmResult {
  Vec3 z{};
  double f{std::numeric_limits<double>::infinity()};
  bool converged{false};
};

// Box-projected Nelder-Mead on a 3-dimensional objective. Candidate points
// are clamped into the box, which keeps the simplex feasible and lets the
// optimum settle exactly on a face when the maximizer is constrained.
template <typename F>
NmResult nelder_mead(F&& objective, Vec3 start, const Vec3& lo, const Vec3& hi) {
  constexpr int kMaxIters = 800;
  constexpr double kFTol = 1e-11;
  constexpr double kXTol = 1e-9;
  const Vec3 steps{0.7, 0.12, 0.7};

  std::array<Vec3, 4> x;
  std::array<double, 4> f;
  x[0] = clamp_to(start, lo, hi);
  f[0] = objective(x[0]);
  for (int i = 1; i < 4; ++i) {
    Vec3 v = x[0];
    v[i - 1] += (v[i - 1] + steps[i - 1] <= hi[i - 1]) ? steps[i - 1] : -steps[i - 1];
    x[i] = clamp_to(v, lo, hi);
    f[i] = objective(x[i]);
  }

  NmResult res;
  auto order = [&] {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
    std::array<Vec3, 4> xs;
    std::array<double, 4> fs;
    for (int i = 0; i < 4; ++i) {
      xs[i] = x[idx[i]];
      fs[i] = f[idx[i]];
    }
    x = xs;
    f = fs;
  };

  for (int iter = 0; iter < kMaxIters; ++iter) {
    order();
    double spread_f = 0.0, spread_x = 0.0;
    for (int i = 1; i < 4; ++i) {
      spread_f = std::max(spread_f, std::abs(f[i] - f[0]));
      for (int d = 0; d < 3; ++d) {
        spread_x = std::max(spread_x, std::abs(x[i][d] - x[0][d]));
      }
    }
    if (spread_f <= kFTol * (1.0 + std::abs(f[0])) && spread_x <= kXTol) {
      res.converged = true;
      break;
    }

    Vec3 centroid{0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      for (int d = 0; d < 3; ++d) centroid[d] += x[i][d] / 3.0;
    }
    auto along = [&](double coef) {
      Vec3 v;
      for (int d = 0; d < 3; ++d) v[d] = centroid[d] + coef * (x[3][d] - centroid[d]);
      return clamp_to(v, lo, hi);
    };

    const Vec3 xr = along(-1.0);
    const double fr = objective(xr);
    if (fr < f[0]) {
      const Vec3 xe = along(-2.0);
      const double fe = objective(xe);
      if (fe < fr) {
        x[3] = xe;
        f[3] = fe;
      } else {
        x[3] = xr;
        f[3] = fr;
      }
    } else if (fr < f[2]) {
      x[3] = xr;
      f[3] = fr;
    } else {
      bool accepted = false;
      if (fr < f[3]) {
        const Vec3 xc = along(-0.5);  // outside contraction
        const double fc = objective(xc);
        if (fc <= fr) {
          x[3] = xc;
          f[3] = fc;
          accepted = true;
        }
      } else {
        const Vec3 xc = along(0.5);  // inside contraction
        const double fc = objective(xc);
        if (fc < f[3]) {
          x[3] = xc;
          f[3] = fc;
          accepted = true;
        }
      }
      if (!accepted) {
        for (int i = 1; i < 4; ++i) {
          for (int d = 0; d < 3; ++d) x[i][d] = x[0][d] + 0.5 * (x[i][d] - x[0][d]);
          x[i] = clamp_to(x[i], lo, hi);
          f[i] = objective(x[i]);
        }
      }
    }
  }
  order();
  res.z = x[0];
  res.f = f[0];
  return res;
}

}  // namespace

MleFit fit_mle(const EventTimes& times, double horizon, KernelFamily family,
               const MleBounds& bounds, int n_starts, std::uint64_t seed) {
  if (times.size() < 10) {
    throw insufficient_data_error("maximum-likelihood fit needs at least 10 events");
  }
  check_horizon(times, horizon);
  if (n_starts < 1) throw config_error("n_starts must be >= 1");

  const double kern_lo =
      bounds.kernel_lo > 0.0 ? bounds.kernel_lo : family_lower_bound(family);
  const double kern_hi =
      bounds.kernel_hi > 0.0 ? bounds.kernel_hi : family_upper_bound(family);
  const double shift = family == KernelFamily::exponential ? 0.0 : 1.0;

  // Optimization runs over z = (log eta, k, log(theta - shift)); the log
  // scales keep 14-decade boxes tractable for the simplex.
  const Vec3 lo{std::log(bounds.eta_lo), bounds.k_lo, std::log(kern_lo - shift)};
  const Vec3 hi{std::log(bounds.eta_hi), bounds.k_hi, std::log(kern_hi - shift)};

  auto params_at = [&](const Vec3& z) {
    SeppParams p;
    p.eta = std::exp(z[0]);
    p.k = z[1];
    p.kernel = TriggeringKernel::make(family, shift + std::exp(z[2]));
    return p;
  };
  auto objective = [&](const Vec3& z) {
    const LogLikelihood ll = loglik(params_at(z), times, horizon);
    return std::isfinite(ll.value) ? -ll.value
                                   : std::numeric_limits<double>::infinity();
  };

  NmResult best;
  for (int s = 0; s < n_starts; ++s) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    Vec3 start{std::log(rng.log_uniform(bounds.eta_lo, bounds.eta_hi)),
               rng.uniform(bounds.k_lo, bounds.k_hi),
               std::log(rng.log_uniform(kern_lo - shift, kern_hi - shift))};
    const NmResult run = nelder_mead(objective, start, lo, hi);
    if (run.f < best.f) best = run;
  }
  // Restart at the incumbent: a fresh simplex around the best point polishes
  // coordinates a collapsed simplex may have stopped moving.
  if (std::isfinite(best.f)) {
    const NmResult polish = nelder_mead(objective, best.z, lo, hi);
    if (polish.f <= best.f) {
      best.z = polish.z;
      best.f = polish.f;
      best.converged = best.converged || polish.converged;
    }
  }

  // Boundary candidate: with k = 0 the model is Poisson and eta = n/T is its
  // exact maximizer. Adopt it when it does at least as well up to solver
  // tolerance: as the kernel parameter approaches its lower bound the
  // likelihood goes flat in k (the excitation term vanishes), and on that
  // ridge rounding noise must not beat the parsimonious boundary solution.
  {
    const double eta_pois =
        std::clamp(static_cast<double>(times.size()) / std::max(horizon, 1e-300),
                   bounds.eta_lo, bounds.eta_hi);
    Vec3 z_pois{std::log(eta_pois), bounds.k_lo, best.z[2]};
    z_pois = clamp_to(z_pois, lo, hi);
    const double f_pois = objective(z_pois);
    const double tie_tol = 1e-6 * (1.0 + std::abs(best.f));
    if (f_pois <= best.f + tie_tol) {
      best.z = z_pois;
      best.f = f_pois;
      best.converged = true;
    }
  }

  // Snap coordinates sitting numerically on a face to the exact bound.
  MleFit fit;
  const char* kernel_name = family == KernelFamily::exponential ? "beta" : "gamma";
  const std::array<const char*, 3> names{"eta", "k", kernel_name};
  for (int d = 0; d < 3; ++d) {
    const double range = hi[d] - lo[d];
    if (best.z[d] - lo[d] <= 1e-9 * range) {
      best.z[d] = lo[d];
      fit.bounds_hit.emplace_back(names[d]);
    } else if (hi[d] - best.z[d] <= 1e-9 * range) {
      best.z[d] = hi[d];
      fit.bounds_hit.emplace_back(names[d]);
    }
  }

  fit.params = params_at(best.z);
  fit.loglik = loglik(fit.params, times, horizon).value;
  fit.converged = best.converged && std::isfinite(fit.loglik);
  fit.n_starts_used = n_starts;
  return fit;
}

}  // namespace ppgrow
