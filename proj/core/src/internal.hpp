#pragma once

#include <cmath>
#include <stdexcept>

#include "breakup/params.hpp"

namespace breakup::detail {

/// Q(t)^2 = hbar t / m, computed without the sqrt round trip. Rejects t < 0.
inline double q_squared(double t, const BreakupParams& p) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("time must be finite and >= 0");
  }
  return p.hbar * t / p.m;
}

}  // namespace breakup::detail
