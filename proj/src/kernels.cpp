#include "distmod/kernels.hpp"

#include <array>
#include <cmath>

namespace distmod {

bool kernel_has_parameter(KernelKind kind) {
  switch (kind) {
    case KernelKind::gaussian:
    case KernelKind::reciprocal:
    case KernelKind::hard_threshold:
    case KernelKind::two_level_step:
      return true;
    default:
      return false;
  }
}

bool kernel_sigma_is_distance(KernelKind kind) {
  switch (kind) {
    case KernelKind::gaussian:
    case KernelKind::reciprocal:
    case KernelKind::hard_threshold:
      return true;
    default:
      return false;
  }
}

KernelSpec make_kernel(KernelKind kind, double sigma) {
  if (kernel_has_parameter(kind)) {
    if (!std::isfinite(sigma))
      throw input_error("kernel '" + kernel_name(kind) + "' needs a finite sigma");
    switch (kind) {
      case KernelKind::gaussian:
      case KernelKind::reciprocal:
        if (sigma <= 0.0)
          throw input_error("kernel '" + kernel_name(kind) + "' needs sigma > 0");
        break;
      case KernelKind::hard_threshold:
        if (sigma < 0.0) throw input_error("threshold sigma must be >= 0");
        break;
      case KernelKind::two_level_step:
        if (sigma < 0.0 || sigma > 1.0)
          throw input_error("step sigma must lie in [0, 1]");
        break;
      default:
        break;
    }
    return {kind, sigma};
  }
  return {kind, 0.0};
}

namespace {
const std::array<std::pair<KernelKind, std::string>, 7> kNames{{
    {KernelKind::gaussian, "gaussian"},
    {KernelKind::reciprocal, "reciprocal"},
    {KernelKind::hard_threshold, "threshold"},
    {KernelKind::constant, "constant"},
    {KernelKind::two_level_step, "step"},
    {KernelKind::exp_decay, "expdecay"},
    {KernelKind::exp_inverse, "expinverse"},
}};
}  // namespace

const std::string& kernel_name(KernelKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return name;
  return kNames[3].second;
}

KernelKind kernel_from_name(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  throw input_error("unknown kernel '" + name + "'");
}

}  // namespace distmod
