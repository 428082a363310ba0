#pragma once

#include <complex>

#include "breakup/params.hpp"

namespace breakup {

using Complex = std::complex<double>;

/// Two-particle position-space amplitude at time t >= 0, unit L2 norm.
/// At t = 0 this is the real Gaussian
///   (pi a b)^{-1/2} exp(-(x1+x2)^2/(4 b^2) - (x1-x2)^2/(4 a^2)).
Complex psi_position(double x1, double x2, double t, const BreakupParams& p);

/// Momentum-space amplitude at time t >= 0, unit L2 norm under the symmetric
/// Fourier convention. |psi_momentum| is independent of t: free evolution is
/// the pure chirp exp(-i Q^2 (k1^2 + k2^2) / 2).
Complex psi_momentum(double k1, double k2, double t, const BreakupParams& p);

/// Joint probability density |psi_position|^2. Its x1*x2 cross term in the
/// log vanishes exactly at t = t0 (Q^2 = a b) and for a = b.
double joint_density(double x1, double x2, double t, const BreakupParams& p);

/// Pure phase entangled state, unit L2 norm:
///   mu sqrt(2/pi) exp(-mu^2 (x1^2 + x2^2) + i nu^2 x1 x2).
/// |psi|^2 factorizes exactly for every nu, yet the state is entangled for
/// nu > 0; the correlation lives between x1 and k2.
Complex pure_phase_psi(double x1, double x2, const PurePhaseParams& q);

}  // namespace breakup
