#include "breakup/states.hpp"

#include <cmath>
#include <numbers>

#include "internal.hpp"

namespace breakup {

namespace {
constexpr double pi = std::numbers::pi;
}

// Free evolution multiplies the momentum amplitude by the chirp
// exp(-i Q^2 (k1^2 + k2^2)/2), Q^2 = hbar t / m. In cm/relative coordinates
// the state is a product of two 1-D Gaussians, and each sector inverts in
// closed form:
//   (2 pi)^{-1/2} Int exp(-(beta^2 + i Q^2) k^2 / 2 + i k u) dk
//       = (beta^2 + i Q^2)^{-1/2} exp(-u^2 / (2 (beta^2 + i Q^2)))
// with beta = b for the cm sector and beta = a for the relative one. Hence
//   psi(x1,x2;t) = sqrt(ab/pi) / sqrt((a^2 + iQ^2)(b^2 + iQ^2))
//                  * exp(-(x1+x2)^2/(4(b^2+iQ^2)) - (x1-x2)^2/(4(a^2+iQ^2))),
// equivalently, over a common denominator, the exponent
//   -[a^2 (x1+x2)^2 + b^2 (x1-x2)^2 + 2 i Q^2 (x1^2+x2^2)]
//     / (4 [a^2 b^2 - Q^4 + i Q^2 (a^2 + b^2)]).
// Both factors a^2+iQ^2, b^2+iQ^2 stay in the right half plane, so the
// principal square roots are the continuous branch from t = 0.
Complex psi_position(double x1, double x2, double t, const BreakupParams& p) {
  const double q2 = detail::q_squared(t, p);
  const Complex sa(p.a * p.a, q2);
  const Complex sb(p.b * p.b, q2);
  const double up = x1 + x2;
  const double um = x1 - x2;
  const Complex exponent = -(up * up) / (4.0 * sb) - (um * um) / (4.0 * sa);
  const Complex prefactor =
      std::sqrt(p.a * p.b / pi) / (std::sqrt(sa) * std::sqrt(sb));
  return prefactor * std::exp(exponent);
}

Complex psi_momentum(double k1, double k2, double t, const BreakupParams& p) {
  const double q2 = detail::q_squared(t, p);
  const double km = k1 - k2;
  const double kp = k1 + k2;
  const double envelope =
      -0.25 * (p.a * p.a * km * km + p.b * p.b * kp * kp);
  const double chirp = -0.5 * q2 * (k1 * k1 + k2 * k2);
  return std::sqrt(p.a * p.b / pi) * std::exp(Complex(envelope, chirp));
}

double joint_density(double x1, double x2, double t, const BreakupParams& p) {
  return std::norm(psi_position(x1, x2, t, p));
}

Complex pure_phase_psi(double x1, double x2, const PurePhaseParams& q) {
  const double mu2 = q.mu * q.mu;
  const double nu2 = q.nu * q.nu;
  const Complex exponent(-mu2 * (x1 * x1 + x2 * x2), nu2 * x1 * x2);
  return q.mu * std::sqrt(2.0 / pi) * std::exp(exponent);
}

}  // namespace breakup
