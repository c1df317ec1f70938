#include "ppgrow/kernel.hpp"

#include <cmath>

#include "ppgrow/errors.hpp"

namespace ppgrow {

const char* family_name(KernelFamily family) {
  return family == KernelFamily::exponential ? "exponential" : "power_law";
}

TriggeringKernel TriggeringKernel::exponential(double beta) {
  return TriggeringKernel(KernelFamily::exponential, beta);
}

TriggeringKernel TriggeringKernel::power_law(double gamma) {
  return TriggeringKernel(KernelFamily::power_law, gamma);
}

TriggeringKernel TriggeringKernel::make(KernelFamily family, double param) {
  return TriggeringKernel(family, param);
}

bool TriggeringKernel::valid() const {
  if (!std::isfinite(param_)) return false;
  return family_ == KernelFamily::exponential ? param_ > 0.0 : param_ > 1.0;
}

void TriggeringKernel::require_valid() const {
  if (valid()) return;
  throw parameter_domain_error(describe() + ": parameter outside its domain");
}

double TriggeringKernel::density(double t) const {
  if (t < 0.0) return 0.0;
  if (family_ == KernelFamily::exponential) return param_ * std::exp(-param_ * t);
  return (param_ - 1.0) * std::pow(1.0 + t, -param_);
}

double TriggeringKernel::integral(double t) const {
  if (t <= 0.0) return 0.0;
  if (family_ == KernelFamily::exponential) return -std::expm1(-param_ * t);
  return 1.0 - std::pow(1.0 + t, -(param_ - 1.0));
}

std::string TriggeringKernel::describe() const {
  return std::string(family_name(family_)) +
         (family_ == KernelFamily::exponential ? "(beta=" : "(gamma=") +
         std::to_string(param_) + ")";
}

}  // namespace ppgrow
