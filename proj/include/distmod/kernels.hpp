#pragma once

#include <cmath>
#include <string>

#include "distmod/errors.hpp"

namespace distmod {

// Kernel families mapping a distance to a link propensity in [0, 1].
// sigma means: a distance scale for gaussian/reciprocal/hard_threshold,
// the far-plateau height in [0, 1] for two_level_step, unused otherwise.
enum class KernelKind {
  gaussian,       // exp(-(d/sigma)^2)
  reciprocal,     // 1 / (1 + (d/sigma)^2)
  hard_threshold, // 1 when d <= sigma, else 0
  constant,       // 1
  two_level_step, // 1 when d == 0, else sigma
  exp_decay,      // exp(-d)
  exp_inverse,    // exp(-1/d) for d > 0, 0 at d = 0
};

struct KernelSpec {
  KernelKind kind = KernelKind::constant;
  double sigma = 0.0;
};

// Whether the kernel takes a sigma parameter at all.
bool kernel_has_parameter(KernelKind kind);
// Whether sigma is measured in distance units (so grids scale with the
// mean pairwise distance).
bool kernel_sigma_is_distance(KernelKind kind);

// Validates sigma for the kind and returns the spec.
KernelSpec make_kernel(KernelKind kind, double sigma = 0.0);

const std::string& kernel_name(KernelKind kind);
// Accepts the CLI vocabulary: gaussian, reciprocal, threshold, constant,
// step, expdecay, expinverse.
KernelKind kernel_from_name(const std::string& name);

inline double kernel_eval(const KernelSpec& k, double d) {
  switch (k.kind) {
    case KernelKind::gaussian: {
      const double r = d / k.sigma;
      return std::exp(-r * r);
    }
    case KernelKind::reciprocal: {
      const double r = d / k.sigma;
      return 1.0 / (1.0 + r * r);
    }
    case KernelKind::hard_threshold:
      return d <= k.sigma ? 1.0 : 0.0;
    case KernelKind::constant:
      return 1.0;
    case KernelKind::two_level_step:
      return d == 0.0 ? 1.0 : k.sigma;
    case KernelKind::exp_decay:
      return std::exp(-d);
    case KernelKind::exp_inverse:
      return d > 0.0 ? std::exp(-1.0 / d) : 0.0;
  }
  return 1.0;
}

}  // namespace distmod
