#include "breakup/schmidt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "internal.hpp"

namespace breakup {

namespace {

void check_mode_index(int n) {
  if (n < 0) {
    throw std::invalid_argument("Schmidt mode index must be >= 0");
  }
}

// Orthonormal Hermite function h_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x)
// e^{-x^2/2}, advanced by
//   h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1},
// which keeps every iterate O(1) instead of letting H_n blow up factorially.
double hermite_function(int n, double x) {
  const double h0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n == 0) return h0;
  double prev = h0;
  double cur = std::sqrt(2.0) * x * h0;
  for (int k = 1; k < n; ++k) {
    const double next =
        x * std::sqrt(2.0 / (k + 1.0)) * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double schmidt_coefficient(int n, const BreakupParams& p) {
  check_mode_index(n);
  const double sum = p.a + p.b;
  const double lambda0 = 4.0 * p.a * p.b / (sum * sum);
  const double ratio = (p.a - p.b) / sum;
  return lambda0 * std::pow(ratio * ratio, n);
}

double schmidt_number(const BreakupParams& p) {
  return 0.5 * (p.a / p.b + p.b / p.a);
}

Complex schmidt_mode(int n, double kappa, double tau) {
  check_mode_index(n);
  const double h = hermite_function(n, kappa);
  return h * std::exp(Complex(0.0, -0.5 * kappa * kappa * tau));
}

Complex schmidt_partial_sum(int n_max, double k1, double k2, double t,
                            const BreakupParams& p) {
  check_mode_index(n_max);
  const double q2 = detail::q_squared(t, p);
  const double alpha = std::sqrt(p.a * p.b);
  const double kap1 = alpha * k1;
  const double kap2 = alpha * k2;
  const double sum = p.a + p.b;
  const double rho = (p.a - p.b) / sum;
  double coeff = 2.0 * alpha / sum;  // sqrt(lambda_0)

  // The mode chirps combine into the n-independent evolution phase.
  const double tau = q2 / (alpha * alpha);
  const Complex chirp =
      std::exp(Complex(0.0, -0.5 * (kap1 * kap1 + kap2 * kap2) * tau));

  const double h0_scale = std::pow(std::numbers::pi, -0.25);
  double h1_prev = 0.0, h2_prev = 0.0;
  double h1 = h0_scale * std::exp(-0.5 * kap1 * kap1);
  double h2 = h0_scale * std::exp(-0.5 * kap2 * kap2);
  double acc = 0.0;
  for (int n = 0;; ++n) {
    acc += coeff * h1 * h2;
    if (n == n_max) break;
    coeff *= rho;
    const double s1 = std::sqrt(2.0 / (n + 1.0));
    const double s2 = std::sqrt(n / (n + 1.0));
    const double next1 = kap1 * s1 * h1 - s2 * h1_prev;
    const double next2 = kap2 * s1 * h2 - s2 * h2_prev;
    h1_prev = h1;
    h2_prev = h2;
    h1 = next1;
    h2 = next2;
  }
  return alpha * acc * chirp;
}

}  // namespace breakup
