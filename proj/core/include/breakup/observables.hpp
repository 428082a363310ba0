#pragma once

#include "breakup/params.hpp"

namespace breakup {

/// Closed-form second moments at time t, with the width ratios and
/// uncertainty products derived from them. R_p and R_x are ratios of
/// standard deviations (square roots of the variances below).
struct VarianceReport {
  double t;
  double var_k_single;
  double var_k_coinc;
  double var_x_single;
  double var_x_coinc;
  double R_p;
  double R_x;
  double C;
  double heisenberg_product;
  double einstein_product;
};

/// Single-particle momentum dispersion (a^2+b^2)/(4 a^2 b^2) = cosh(r)/(2ab).
/// Time-independent: evolution is a pure phase in momentum space.
double var_k_single(const BreakupParams& p);

/// Conditional (coincidence) momentum dispersion 1/(a^2+b^2). For Gaussian
/// states it does not depend on the conditioned value; the parameter is
/// accepted so oracle comparisons can sweep it.
double var_k_coinc(const BreakupParams& p, double conditioned_on = 0.0);

/// Momentum Fedorov ratio, sqrt(var_k_single/var_k_coinc) = cosh r = K.
double fedorov_ratio_p(const BreakupParams& p);

/// Single-particle position dispersion (1 + t^2/t0^2) ab cosh(r)/2.
double var_x_single(double t, const BreakupParams& p);

/// Conditional position dispersion
///   (a^4 + Q^4)(b^4 + Q^4) / [(a^2+b^2)(a^2 b^2 + Q^4)].
double var_x_coinc(double t, const BreakupParams& p,
                   double conditioned_on = 0.0);

/// C(t) = (1 + u^2) / sqrt((e^{2r} + u^2)(e^{-2r} + u^2)), u = t/t0: the
/// fraction of entanglement still visible in position-space widths.
/// C(0) = 1 exactly, unique minimum C(t0) = 1/cosh r, recovers to 1 as
/// t -> infinity. Identically 1 when a = b.
double c_factor(double t, const BreakupParams& p);

/// Position Fedorov ratio sqrt(var_x_single/var_x_coinc) = K C(t);
/// equals K at t = 0 and asymptotically, dips to 1 at t = t0.
double fedorov_ratio_x(double t, const BreakupParams& p);

/// var_x_single * var_k_single = cosh^2(r)/4 (1 + t^2/t0^2) >= 1/4.
double heisenberg_product(double t, const BreakupParams& p);

/// var_x_coinc * var_k_coinc
///   = (e^{2r} + u^2)(e^{-2r} + u^2) / (4 cosh^2 r (1 + u^2)).
/// Below 1/4 at t = 0 for r != 0 (EPR regime), exactly 1/2 at t = t0 for
/// every r, grows like u^2/(4 cosh^2 r) for u >> e^{|r|}.
double einstein_product(double t, const BreakupParams& p);

VarianceReport variance_report(double t, const BreakupParams& p);

}  // namespace breakup
