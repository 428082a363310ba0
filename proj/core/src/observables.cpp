#include "breakup/observables.hpp"

#include <cmath>

#include "internal.hpp"

namespace breakup {

namespace {
double schmidt_number_scale(const BreakupParams& p) {
  return 0.5 * (p.a / p.b + p.b / p.a);  // cosh r
}
}  // namespace

double var_k_single(const BreakupParams& p) {
  const double a2 = p.a * p.a;
  const double b2 = p.b * p.b;
  return (a2 + b2) / (4.0 * a2 * b2);
}

double var_k_coinc(const BreakupParams& p, double /*conditioned_on*/) {
  return 1.0 / (p.a * p.a + p.b * p.b);
}

double fedorov_ratio_p(const BreakupParams& p) {
  return std::sqrt(var_k_single(p) / var_k_coinc(p));
}

double var_x_single(double t, const BreakupParams& p) {
  const double q2 = detail::q_squared(t, p);
  const double a2 = p.a * p.a;
  const double b2 = p.b * p.b;
  return (a2 + b2) * (a2 * b2 + q2 * q2) / (4.0 * a2 * b2);
}

double var_x_coinc(double t, const BreakupParams& p,
                   double /*conditioned_on*/) {
  const double q4 = std::pow(detail::q_squared(t, p), 2);
  const double a2 = p.a * p.a;
  const double b2 = p.b * p.b;
  return (a2 * a2 + q4) * (b2 * b2 + q4) / ((a2 + b2) * (a2 * b2 + q4));
}

double c_factor(double t, const BreakupParams& p) {
  const double q2 = detail::q_squared(t, p);
  const double K = schmidt_number_scale(p);
  if (K == 1.0) return 1.0;  // a = b: product state, C is identically 1
  const double u2 = std::pow(q2 / (p.a * p.b), 2);  // (t/t0)^2
  if (std::isinf(u2)) return 1.0;                   // t -> infinity limit
  // (e^{2r} + u^2)(e^{-2r} + u^2) = (1 + u^2)^2 + 2 u^2 (cosh 2r - 1), so
  //   C = 1 / sqrt(1 + 2 (cosh 2r - 1) w),   w = u^2 / (1 + u^2)^2 <= 1/4.
  // The bounded w keeps the radical finite for every t and makes C(0)
  // evaluate to exactly 1.
  const double w = u2 / ((1.0 + u2) * (1.0 + u2));
  return 1.0 / std::sqrt(1.0 + 4.0 * (K * K - 1.0) * w);
}

double fedorov_ratio_x(double t, const BreakupParams& p) {
  return std::sqrt(var_x_single(t, p) / var_x_coinc(t, p));
}

double heisenberg_product(double t, const BreakupParams& p) {
  return var_x_single(t, p) * var_k_single(p);
}

double einstein_product(double t, const BreakupParams& p) {
  return var_x_coinc(t, p) * var_k_coinc(p);
}

VarianceReport variance_report(double t, const BreakupParams& p) {
  VarianceReport rep;
  rep.t = t;
  rep.var_k_single = var_k_single(p);
  rep.var_k_coinc = var_k_coinc(p);
  rep.var_x_single = var_x_single(t, p);
  rep.var_x_coinc = var_x_coinc(t, p);
  rep.R_p = fedorov_ratio_p(p);
  rep.R_x = fedorov_ratio_x(t, p);
  rep.C = c_factor(t, p);
  rep.heisenberg_product = heisenberg_product(t, p);
  rep.einstein_product = einstein_product(t, p);
  return rep;
}

}  // namespace breakup
