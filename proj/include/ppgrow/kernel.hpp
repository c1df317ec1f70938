#pragma once

#include <string>

namespace ppgrow {

enum class KernelFamily { exponential, power_law };

[[nodiscard]] const char* family_name(KernelFamily family);

// Search box shared by every estimator of the kernel shape parameter.
inline constexpr double kBetaLowerBound = 1e-6;
inline constexpr double kBetaUpperBound = 1e4;
inline constexpr double kGammaLowerBound = 1.0 + 1e-6;
inline constexpr double kGammaUpperBound = 1e3;

[[nodiscard]] constexpr double family_lower_bound(KernelFamily family) {
  return family == KernelFamily::exponential ? kBetaLowerBound : kGammaLowerBound;
}
[[nodiscard]] constexpr double family_upper_bound(KernelFamily family) {
  return family == KernelFamily::exponential ? kBetaUpperBound : kGammaUpperBound;
}

// Normalized triggering density g(t), t >= 0. Two one-parameter families:
//   exponential: g(t) = beta * exp(-beta t),        beta > 0
//   power law:   g(t) = (gamma - 1) * (1 + t)^-gamma, gamma > 1
// Both integrate to 1 and are strictly decreasing, which the thinning
// simulator relies on for its piecewise-constant dominating intensity.
class TriggeringKernel {
 public:
  [[nodiscard]] static TriggeringKernel exponential(double beta);
  [[nodiscard]] static TriggeringKernel power_law(double gamma);
  [[nodiscard]] static TriggeringKernel make(KernelFamily family, double param);

  [[nodiscard]] KernelFamily family() const { return family_; }
  // The single shape parameter: beta or gamma depending on family.
  [[nodiscard]] double param() const { return param_; }

  [[nodiscard]] bool valid() const;
  // Throws parameter_domain_error when !valid().
  void require_valid() const;

  // g(t). t < 0 yields 0.
  [[nodiscard]] double density(double t) const;
  // G(t) = ∫_0^t g(s) ds. t < 0 yields 0.
  [[nodiscard]] double integral(double t) const;

  [[nodiscard]] std::string describe() const;

 private:
  TriggeringKernel(KernelFamily family, double param) : family_(family), param_(param) {}

  KernelFamily family_{KernelFamily::exponential};
  double param_{1.0};
};

}  // namespace ppgrow
