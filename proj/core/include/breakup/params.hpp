#pragma once

namespace breakup {

/// Physical inputs of the two-particle Gaussian breakup state: the
/// relative-coordinate packet width a, the center-of-mass packet width b,
/// the (equal) particle mass m and hbar. Natural units m = hbar = 1 by
/// default. Construction rejects non-positive or non-finite values.
struct BreakupParams {
  double a;
  double b;
  double m;
  double hbar;

  explicit BreakupParams(double a, double b, double m = 1.0, double hbar = 1.0);
};

/// Scales every closed form is built from:
///   alpha = sqrt(a b),  r = ln(a/b),  t0 = m a b / hbar,  K = cosh r.
/// K is evaluated as (a/b + b/a)/2 so that the identity is exact in
/// floating point and even under a <-> b.
struct DerivedScales {
  double alpha;
  double r;
  double t0;
  double K;
};

/// Parameters of the pure phase entangled state
///   psi ~ exp(-mu^2 (x1^2 + x2^2) + i nu^2 x1 x2),
/// whose position and momentum joint densities both factorize for every nu.
struct PurePhaseParams {
  double mu;
  double nu;

  explicit PurePhaseParams(double mu, double nu);
};

DerivedScales derive_scales(const BreakupParams& p);

/// Quantum diffusion length Q(t) = sqrt(hbar t / m); Q(t0)^2 = a b.
/// Rejects t < 0 (breakup happens at t = 0+).
double diffusion_length(double t, const BreakupParams& p);

}  // namespace breakup
