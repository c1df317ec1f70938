#include "ppgrow/inar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ppgrow/errors.hpp"

namespace ppgrow {

BinCountSeries discretize(const EventTimes& times, double delta, double span_start,
                          double span_end) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw domain_error("bin width delta must be finite and > 0");
  }
  if (!(span_end >= span_start)) {
    throw domain_error("span end must not precede span start");
  }
  const double len = span_end - span_start;
  double q = len / delta;
  std::size_t n_bins = static_cast<std::size_t>(std::floor(q));
  // Absorb representation error when the span is an exact multiple of delta.
  if (q - static_cast<double>(n_bins) > 1.0 - 1e-9) ++n_bins;
  if (n_bins == 0) {
    throw insufficient_data_error("span is shorter than one full bin");
  }

  BinCountSeries out;
  out.delta = delta;
  out.span_start = span_start;
  out.span_end = span_end;
  out.counts.assign(n_bins, 0);
  for (double t : times) {
    const double rel = t - span_start;
    if (rel <= 0.0) continue;  // bin 1 is the half-open interval (0, delta]
    const double k = std::ceil(rel / delta);
    if (k < 1.0 || k > static_cast<double>(n_bins)) continue;
    ++out.counts[static_cast<std::size_t>(k) - 1];
  }
  return out;
}

InarFit fit_inar(const BinCountSeries& bins, std::size_t p) {
  if (p < 1) throw domain_error("autoregression order p must be >= 1");
  const std::size_t n = bins.counts.size();
  if (n <= p + 1) {
    throw insufficient_data_error("least squares needs more than p+1 bins (got " +
                                  std::to_string(n) + " for p=" + std::to_string(p) + ")");
  }
  const std::size_t rows = n - p;
  const std::size_t cols = p + 1;

  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    y(static_cast<Eigen::Index>(r)) = static_cast<double>(bins.counts[p + r]);
    x(static_cast<Eigen::Index>(r), 0) = 1.0;
    for (std::size_t j = 1; j <= p; ++j) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          static_cast<double>(bins.counts[p + r - j]);
    }
  }

  // Normal system solved by a rank-revealing complete orthogonal
  // decomposition: for rank-deficient designs this yields the same
  // minimum-norm solution as the pseudoinverse of the design itself.
  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::VectorXd rhs = x.transpose() * y;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  const Eigen::VectorXd alpha = cod.solve(rhs);

  InarFit fit;
  fit.alpha.assign(alpha.data(), alpha.data() + alpha.size());
  fit.rank = static_cast<int>(cod.rank());
  fit.singular = cod.rank() < static_cast<Eigen::Index>(cols);
  if (fit.singular) {
    fit.singular_description = "design rank " + std::to_string(fit.rank) + " < " +
                               std::to_string(cols) +
                               " columns; minimum-norm solution returned";
  }
  fit.residual_ss = (y - x * alpha).squaredNorm();
  return fit;
}

NormalizedInar normalize(const std::vector<double>& alpha, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw domain_error("bin width delta must be finite and > 0");
  }
  if (alpha.size() < 2) {
    throw insufficient_data_error("normalization needs an intercept and at least one lag");
  }
  NormalizedInar out;
  out.eta_hat = alpha[0] / delta;
  double k = 0.0;
  for (std::size_t j = 1; j < alpha.size(); ++j) k += alpha[j];
  out.k_hat = k;
  out.k_negative = k <= 0.0;
  out.k_ge_one = k >= 1.0;
  if (k != 0.0) {
    out.g_hat.resize(alpha.size() - 1);
    for (std::size_t j = 1; j < alpha.size(); ++j) {
      out.g_hat[j - 1] = alpha[j] / (k * delta);
    }
  }
  return out;
}

namespace {

double kernel_derivative(KernelFamily family, double param, double t) {
  if (family == KernelFamily::exponential) {
    return std::exp(-param * t) * (1.0 - param * t);
  }
  return std::pow(1.0 + t, -param) * (1.0 - (param - 1.0) * std::log1p(t));
}

struct BoundedScalarFit {
  double theta{0.0};
  double ss{std::numeric_limits<double>::infinity()};
  bool converged{false};
};

// Damped Gauss-Newton for one bounded shape parameter.
BoundedScalarFit minimize_kernel_ss(const std::vector<double>& g_hat, double delta,
                                    KernelFamily family, double lo, double hi,
                                    double start) {
  const std::size_t p = g_hat.size();
  auto ss_at = [&](double theta) {
    const TriggeringKernel k = TriggeringKernel::make(family, theta);
    double acc = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double m = (static_cast<double>(i) + 0.5) * delta;
      const double r = k.density(m) - g_hat[i];
      acc += r * r;
    }
    return acc;
  };

  BoundedScalarFit fit;
  fit.theta = std::clamp(start, lo, hi);
  fit.ss = ss_at(fit.theta);

  constexpr int kMaxIters = 200;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    const TriggeringKernel k = TriggeringKernel::make(family, fit.theta);
    double jr = 0.0, jj = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double m = (static_cast<double>(i) + 0.5) * delta;
      const double r = k.density(m) - g_hat[i];
      const double j = kernel_derivative(family, fit.theta, m);
      jr += j * r;
      jj += j * j;
    }
    if (jj <= 0.0) {  // flat residual surface; nothing to move along
      fit.converged = true;
      break;
    }
    double step = -jr / jj;
    bool moved = false;
    for (int halving = 0; halving < 60; ++halving) {
      const double cand = std::clamp(fit.theta + step, lo, hi);
      if (cand == fit.theta) break;  // pinned against a bound
      const double cand_ss = ss_at(cand);
      if (cand_ss <= fit.ss) {
        const double rel_move = std::abs(cand - fit.theta) / std::max(1e-12, fit.theta);
        const bool tiny_move = rel_move < 1e-12;
        const bool tiny_gain = fit.ss - cand_ss <= 1e-15 * (1.0 + fit.ss);
        fit.theta = cand;
        fit.ss = cand_ss;
        moved = true;
        if (tiny_move || tiny_gain) fit.converged = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      // No descent direction left: either a stationary point or a bound.
      fit.converged = true;
      break;
    }
    if (fit.converged) break;
  }
  return fit;
}

}  // namespace

KernelNlsFit fit_kernel_nls(const std::vector<double>& g_hat, double delta,
                            KernelFamily family) {
  if (g_hat.size() < 3) {
    throw insufficient_data_error("kernel fit needs at least 3 density estimates");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw domain_error("bin width delta must be finite and > 0");
  }

  const bool exp_family = family == KernelFamily::exponential;
  const double lo = exp_family ? kBetaLowerBound : kGammaLowerBound;
  const double hi = exp_family ? kBetaUpperBound : kGammaUpperBound;
  // Log-spaced starts across the box (in gamma - 1 for the power law, whose
  // lower edge is a unit offset rather than zero).
  const double shift = exp_family ? 0.0 : 1.0;
  constexpr int kStarts = 5;

  BoundedScalarFit best;
  for (int s = 0; s < kStarts; ++s) {
    const double f = static_cast<double>(s) / (kStarts - 1);
    const double start =
        shift + std::exp(std::log(lo - shift) + f * (std::log(hi - shift) - std::log(lo - shift)));
    const BoundedScalarFit fit = minimize_kernel_ss(g_hat, delta, family, lo, hi, start);
    if (fit.ss < best.ss || (fit.ss == best.ss && fit.converged && !best.converged)) {
      best = fit;
    }
  }

  KernelNlsFit out;
  out.kernel = TriggeringKernel::make(family, best.theta);
  out.residual_ss = best.ss;
  out.converged = best.converged;
  out.at_bound = best.theta <= lo * (1.0 + 1e-9) || best.theta >= hi * (1.0 - 1e-9);
  return out;
}

InarEstimate estimate_window(const EventTimes& times, std::size_t p, double delta,
                             KernelFamily family) {
  if (times.size() < 2) {
    throw insufficient_data_error("window estimation needs at least two events");
  }
  const BinCountSeries bins = discretize(times, delta, 0.0, times.back());

  InarEstimate est;
  est.p = p;
  est.delta = delta;
  est.n_bins = bins.counts.size();
  const auto zero_count =
      std::count(bins.counts.begin(), bins.counts.end(), std::int64_t{0});
  est.zero_bin_fraction =
      static_cast<double>(zero_count) / static_cast<double>(bins.counts.size());
  est.flags.zero_bin_warning = est.zero_bin_fraction > 0.99;

  const InarFit ls = fit_inar(bins, p);
  est.alpha = ls.alpha;
  est.ls_residual_ss = ls.residual_ss;
  est.flags.singular_design = ls.singular;
  est.singular_description = ls.singular_description;

  const NormalizedInar norm = normalize(ls.alpha, delta);
  est.eta_hat = norm.eta_hat;
  est.k_hat = norm.k_hat;
  est.g_hat = norm.g_hat;
  est.flags.k_negative = norm.k_negative;
  est.flags.k_ge_one = norm.k_ge_one;
  est.flags.low_signal = norm.k_hat < 0.05;

  if (!norm.g_hat.empty()) {
    const KernelNlsFit fit = fit_kernel_nls(norm.g_hat, delta, family);
    est.kernel_fit = fit;
    est.flags.solver_failed = !fit.converged;
  }
  return est;
}

}  // namespace ppgrow
