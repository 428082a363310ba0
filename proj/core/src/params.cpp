#include "breakup/params.hpp"

#include <cmath>
#include <stdexcept>

namespace breakup {

namespace {
bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
}  // namespace

BreakupParams::BreakupParams(double a_, double b_, double m_, double hbar_)
    : a(a_), b(b_), m(m_), hbar(hbar_) {
  if (!positive_finite(a) || !positive_finite(b) || !positive_finite(m) ||
      !positive_finite(hbar)) {
    throw std::invalid_argument(
        "BreakupParams: a, b, m, hbar must all be finite and > 0");
  }
}

PurePhaseParams::PurePhaseParams(double mu_, double nu_) : mu(mu_), nu(nu_) {
  if (!positive_finite(mu) || !std::isfinite(nu) || nu < 0.0) {
    throw std::invalid_argument(
        "PurePhaseParams: require finite mu > 0 and nu >= 0");
  }
}

DerivedScales derive_scales(const BreakupParams& p) {
  DerivedScales s;
  s.alpha = std::sqrt(p.a * p.b);
  s.r = std::log(p.a / p.b);
  s.t0 = p.m * p.a * p.b / p.hbar;
  s.K = 0.5 * (p.a / p.b + p.b / p.a);
  return s;
}

double diffusion_length(double t, const BreakupParams& p) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("diffusion_length: t must be finite and >= 0");
  }
  return std::sqrt(p.hbar * t / p.m);
}

}  // namespace breakup
