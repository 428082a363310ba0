#pragma once

#include <complex>

#include "breakup/params.hpp"

namespace breakup {

using Complex = std::complex<double>;

/// Schmidt spectrum of the breakup state, geometric for Gaussians:
///   lambda_n = 4ab/(a+b)^2 * ((a-b)/(a+b))^(2n),  sum_n lambda_n = 1.
/// Independent of time. a = b gives lambda_0 = 1 and zero for n >= 1.
double schmidt_coefficient(int n, const BreakupParams& p);

/// Effective number of occupied Schmidt modes,
///   K = (sum_n lambda_n^2)^{-1} = (a/b + b/a)/2 = cosh r,  K >= 1.
double schmidt_number(const BreakupParams& p);

/// Dimensionless momentum-space Schmidt mode
///   phi_n(kappa, tau) = h_n(kappa) exp(-i kappa^2 tau / 2),
/// h_n the orthonormal Hermite function. The chirp cancels in inner
/// products, so the modes stay orthonormal in kappa at every tau.
/// Evaluated by the normalized three-term recurrence; stable at least to
/// n = 200 (no factorial overflow).
Complex schmidt_mode(int n, double kappa, double tau);

/// Truncated Schmidt expansion of psi_momentum at time t:
///   alpha sum_{n=0}^{n_max} c_n phi_n(alpha k1, Q^2/alpha^2)
///                               phi_n(alpha k2, Q^2/alpha^2),
/// with c_n = sqrt(lambda_0) rho^n, rho = (a-b)/(a+b). The signed ratio
/// (|c_n| = sqrt(lambda_n)) makes the sum converge pointwise to
/// psi_momentum for either sign of a - b; the L2 truncation error is
/// sqrt(sum_{n > n_max} lambda_n).
Complex schmidt_partial_sum(int n_max, double k1, double k2, double t,
                            const BreakupParams& p);

}  // namespace breakup
