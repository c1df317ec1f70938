#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ppgrow/event_times.hpp"
#include "ppgrow/kernel.hpp"

namespace ppgrow {

// Bin counts X_n = N(((n-1)*delta, n*delta]) over a span, n = 1-based.
struct BinCountSeries {
  std::vector<std::int64_t> counts;
  double delta{0.0};
  double span_start{0.0};
  double span_end{0.0};
};

// Count-regression estimator for the self-exciting model. The recipe:
//
//   1. discretize the window into bin counts at width delta;
//   2. regress X_n on an intercept and its own p lags by least squares,
//      minimizing sum_{n=p+1}^{N} (X_n - a_0 - sum_k a_k X_{n-k})^2
//      (the first p bins serve only as regressors — no zero-padding);
//   3. map the coefficients back to point-process scale:
//        eta_hat = a_0 / delta,  k_hat = sum_k a_k,  g_hat_k = a_k / (k_hat delta);
//   4. fit the parametric kernel to g_hat by least squares at bin midpoints.
//
// Estimates landing outside the stationary region (k_hat < 0 or >= 1) are
// reported as-is with flags — they are the breakdown signal the window
// scanner looks for, so projecting them away would defeat the point.

// Right-closed binning: an event at exactly rel = k*delta is assigned to bin
// k; an event exactly at the span start (rel = 0) precedes bin 1 and is not
// counted. The last partial bin is dropped. Events outside the covered bins
// are ignored. Throws insufficient_data_error when the span is shorter than
// one full bin.
[[nodiscard]] BinCountSeries discretize(const EventTimes& times, double delta,
                                        double span_start, double span_end);

struct InarFit {
  std::vector<double> alpha;  // a_0, a_1 .. a_p
  double residual_ss{0.0};
  int rank{0};           // numerical rank of the (p+1)-column design
  bool singular{false};  // rank deficient: alpha is the minimum-norm solution
  std::string singular_description;
};

// Exact linear least squares for step 2, solved through a rank-revealing
// orthogonal factorization of the normal system. A rank-deficient design
// (e.g. all-zero counts) does not throw: the minimum-norm solution is
// returned with `singular` set so batch runs over sparse windows keep going.
// Throws insufficient_data_error unless the series has more than p+1 bins.
[[nodiscard]] InarFit fit_inar(const BinCountSeries& bins, std::size_t p);

struct NormalizedInar {
  double eta_hat{0.0};
  double k_hat{0.0};
  // Triggering-density estimates at bin scale; g_hat[k-1] estimates g(k*delta).
  // Empty when k_hat == 0 exactly (the normalization is undefined there);
  // emitted sign-flipped when k_hat < 0.
  std::vector<double> g_hat;
  bool k_negative{false};  // set whenever k_hat <= 0
  bool k_ge_one{false};
};

[[nodiscard]] NormalizedInar normalize(const std::vector<double>& alpha, double delta);

struct KernelNlsFit {
  TriggeringKernel kernel{TriggeringKernel::exponential(1.0)};
  double residual_ss{0.0};
  bool converged{false};
  bool at_bound{false};  // estimate pinned at a box bound (degenerate target)
};

// Step 4: minimize sum_k (g((k-0.5)*delta; theta) - g_hat_k)^2 over the
// family's box (beta in [1e-6, 1e4], gamma in [1+1e-6, 1e3]) with a damped
// Gauss-Newton iteration from 5 log-spaced starts. Requires >= 3 points.
[[nodiscard]] KernelNlsFit fit_kernel_nls(const std::vector<double>& g_hat,
                                          double delta, KernelFamily family);

struct InarDiagnosticFlags {
  bool k_negative{false};
  bool k_ge_one{false};
  bool solver_failed{false};
  bool singular_design{false};
  bool zero_bin_warning{false};  // more than 99% of bins empty
  bool low_signal{false};        // k_hat < 0.05: kernel shape barely identified
};

struct InarEstimate {
  std::size_t p{0};
  double delta{0.0};
  std::size_t n_bins{0};
  std::vector<double> alpha;
  double eta_hat{0.0};
  double k_hat{0.0};
  std::vector<double> g_hat;
  std::optional<KernelNlsFit> kernel_fit;  // absent when k_hat == 0
  double ls_residual_ss{0.0};
  double zero_bin_fraction{0.0};
  std::string singular_description;
  InarDiagnosticFlags flags;
};

inline constexpr std::size_t kDefaultInarOrder = 150;
inline constexpr double kDefaultInarDelta = (1.0 / 24.0) / 12.0;  // 5-minute bins

// Full pipeline over one observation window: the window's events are
// expected re-based to start at 0 and the span runs to the last event.
[[nodiscard]] InarEstimate estimate_window(const EventTimes& times,
                                           std::size_t p = kDefaultInarOrder,
                                           double delta = kDefaultInarDelta,
                                           KernelFamily family = KernelFamily::exponential);

}  // namespace ppgrow
