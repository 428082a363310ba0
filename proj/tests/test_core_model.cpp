#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "breakup/grid.hpp"
#include "breakup/params.hpp"
#include "breakup/schmidt.hpp"
#include "breakup/schmidt_svd.hpp"
#include "breakup/states.hpp"
#include "breakup/transforms.hpp"
#include "test_util.hpp"

using namespace breakup;
using testutil::rel_err;

namespace {
constexpr double pi = std::numbers::pi;

const BreakupParams kRef(2.0, 0.5);  // r = ln 4, K = 2.125, t0 = 1

// Midpoint quadrature of f over [lo, hi]; spectrally accurate for the
// entire, rapidly decaying integrands used here.
template <typename F>
double quad(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  long double acc = 0.0L;
  for (int i = 0; i < n; ++i) acc += f(lo + (i + 0.5) * h);
  return static_cast<double>(acc * h);
}
}  // namespace

TEST_CASE("derive_scales on the symmetric and reference cases") {
  const DerivedScales sym = derive_scales(BreakupParams(1.0, 1.0));
  CHECK(sym.alpha == 1.0);
  CHECK(sym.r == 0.0);
  CHECK(sym.t0 == 1.0);
  CHECK(sym.K == 1.0);

  const DerivedScales ref = derive_scales(kRef);
  CHECK(ref.alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ref.r == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(ref.t0 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ref.K == doctest::Approx(2.125).epsilon(1e-15));

  // K is even under a <-> b, r flips sign.
  const DerivedScales swapped = derive_scales(BreakupParams(0.5, 2.0));
  CHECK(swapped.K == ref.K);
  CHECK(swapped.r == doctest::Approx(-ref.r).epsilon(1e-15));
}

TEST_CASE("derive_scales identities over random parameters") {
  auto rng = testutil::make_rng();
  std::uniform_real_distribution<double> dist(0.3, 3.0);
  for (int i = 0; i < 50; ++i) {
    const BreakupParams p(dist(rng), dist(rng));
    const DerivedScales s = derive_scales(p);
    CHECK(rel_err(s.K, std::cosh(std::log(p.a / p.b))) < 1e-14);
    CHECK(s.K >= 1.0);
    CHECK(s.t0 > 0.0);
    CHECK(s.alpha > 0.0);
  }
}

TEST_CASE("BreakupParams rejects invalid fields") {
  CHECK_THROWS_AS(BreakupParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BreakupParams(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(BreakupParams(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(BreakupParams(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(BreakupParams(nan, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BreakupParams(1.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}

TEST_CASE("diffusion_length") {
  CHECK(diffusion_length(0.0, kRef) == 0.0);
  // Q(t0)^2 = a b
  const double t0 = derive_scales(kRef).t0;
  const double q = diffusion_length(t0, kRef);
  CHECK(rel_err(q * q, kRef.a * kRef.b) < 1e-15);
  CHECK(diffusion_length(4.0, BreakupParams(1.0, 1.0)) == 2.0);
  CHECK_THROWS_AS(diffusion_length(-1e-12, kRef), std::invalid_argument);
}

TEST_CASE("psi_position modulus at the origin is the prefactor modulus") {
  for (double t : {0.0, 0.3, 1.0, 2.5}) {
    const double q2 = t;  // hbar = m = 1
    const double expected = std::sqrt(kRef.a * kRef.b / pi) /
                            std::sqrt(std::hypot(kRef.a * kRef.a, q2) *
                                      std::hypot(kRef.b * kRef.b, q2));
    CHECK(rel_err(std::abs(psi_position(0.0, 0.0, t, kRef)), expected) <
          1e-14);
  }
}

TEST_CASE("psi_position at t=0 is the real Gaussian breakup state") {
  // a = b = 1: psi = pi^{-1/2} exp(-(x1^2+x2^2)/2), factorized.
  const BreakupParams sym(1.0, 1.0);
  for (double x1 : {-1.5, 0.25, 2.0}) {
    for (double x2 : {-0.75, 0.0, 1.0}) {
      const Complex v = psi_position(x1, x2, 0.0, sym);
      CHECK(v.imag() == 0.0);
      const double expected =
          std::exp(-0.5 * (x1 * x1 + x2 * x2)) / std::sqrt(pi);
      CHECK(rel_err(v.real(), expected) < 1e-14);
      // no cross term: psi(x1,x2) psi(0,0) = psi(x1,0) psi(0,x2)
      const double lhs = v.real() * psi_position(0, 0, 0, sym).real();
      const double rhs = psi_position(x1, 0, 0, sym).real() *
                         psi_position(0, x2, 0, sym).real();
      CHECK(rel_err(lhs, rhs) < 1e-13);
    }
  }
  // general a, b: still zero phase at t = 0
  for (double x1 : {-2.0, 0.7}) {
    for (double x2 : {-0.3, 1.1}) {
      CHECK(std::abs(psi_position(x1, x2, 0.0, kRef).imag()) < 1e-16);
      const double direct =
          std::exp(-std::pow(x1 + x2, 2) / (4 * kRef.b * kRef.b) -
                   std::pow(x1 - x2, 2) / (4 * kRef.a * kRef.a)) /
          std::sqrt(pi * kRef.a * kRef.b);
      CHECK(rel_err(psi_position(x1, x2, 0.0, kRef).real(), direct) < 1e-13);
    }
  }
}

TEST_CASE("state constructors are unit-normalized (grid quadrature)") {
  const oracle::GridSpec spec = oracle::auto_grid_spec(kRef, 0.0, 256);
  const auto pos0 = oracle::discretize(
      [](double x1, double x2) { return psi_position(x1, x2, 0.0, kRef); },
      spec, oracle::SpaceTag::position);
  CHECK(std::abs(pos0.norm() - 1.0) < 1e-10);

  const auto mom0 = oracle::discretize(
      [](double k1, double k2) { return psi_momentum(k1, k2, 0.0, kRef); },
      spec, oracle::SpaceTag::momentum);
  CHECK(std::abs(mom0.norm() - 1.0) < 1e-10);

  const double t = 0.8;
  const oracle::GridSpec spec_t = oracle::auto_grid_spec(kRef, t, 256);
  const auto pos_t = oracle::discretize(
      [t](double x1, double x2) { return psi_position(x1, x2, t, kRef); },
      spec_t, oracle::SpaceTag::position);
  CHECK(std::abs(pos_t.norm() - 1.0) < 1e-10);

  const PurePhaseParams q(1.0, 1.0);
  const auto phase = oracle::discretize(
      [&q](double x1, double x2) { return pure_phase_psi(x1, x2, q); },
      oracle::auto_grid_spec(q, 256), oracle::SpaceTag::position);
  CHECK(std::abs(phase.norm() - 1.0) < 1e-10);
}

TEST_CASE("psi_momentum modulus is time-independent; peak is real") {
  for (double k1 : {-1.2, 0.0, 0.8}) {
    for (double k2 : {-0.5, 0.1, 1.7}) {
      const double m0 = std::abs(psi_momentum(k1, k2, 0.0, kRef));
      for (double t : {0.4, 1.0, 3.0}) {
        CHECK(rel_err(std::abs(psi_momentum(k1, k2, t, kRef)), m0) < 1e-14);
      }
    }
  }
  const Complex peak = psi_momentum(0.0, 0.0, 0.0, kRef);
  CHECK(peak.imag() == 0.0);
  CHECK(rel_err(peak.real(), std::sqrt(kRef.a * kRef.b / pi)) < 1e-15);
}

TEST_CASE("joint_density log-factorization at t0 and for a = b") {
  const double t0 = derive_scales(kRef).t0;
  auto cross = [](const BreakupParams& p, double t, double x1, double x2) {
    return std::log(joint_density(x1, x2, t, p)) +
           std::log(joint_density(0.0, 0.0, t, p)) -
           std::log(joint_density(x1, 0.0, t, p)) -
           std::log(joint_density(0.0, x2, t, p));
  };
  for (double x1 : {-1.0, 0.4, 1.3}) {
    for (double x2 : {-0.8, 0.6}) {
      CHECK(std::abs(cross(kRef, t0, x1, x2)) < 1e-12);
      // a = b factorizes at every time
      const BreakupParams sym(1.3, 1.3);
      for (double t : {0.0, 0.5, 2.0}) {
        CHECK(std::abs(cross(sym, t, x1, x2)) < 1e-12);
      }
      // away from t0 the cross term is real for a != b
      CHECK(std::abs(cross(kRef, 0.5 * t0, x1, x2)) > 1e-3);
    }
  }
}

TEST_CASE("joint_density cross term: constant mixed log-derivative with the predicted sign") {
  // log P is quadratic, so the centered mixed difference is exact for any
  // step; it must be constant across centers and vanish at t = t0.
  auto mixed = [](const BreakupParams& p, double t, double x1, double x2) {
    const double h = 0.5;
    return (std::log(joint_density(x1 + h, x2 + h, t, p)) -
            std::log(joint_density(x1 + h, x2 - h, t, p)) -
            std::log(joint_density(x1 - h, x2 + h, t, p)) +
            std::log(joint_density(x1 - h, x2 - h, t, p))) /
           (4.0 * h * h);
  };
  for (double t : {0.0, 0.5, 2.0}) {
    const double q2 = t;
    const double predicted_sign =
        (kRef.a * kRef.a * kRef.b * kRef.b - q2 * q2) *
        (kRef.b * kRef.b - kRef.a * kRef.a);
    const double v0 = mixed(kRef, t, 0.0, 0.0);
    CHECK(std::signbit(v0) == std::signbit(predicted_sign));
    for (double x1 : {-0.9, 0.7}) {
      for (double x2 : {-0.2, 1.1}) {
        CHECK(std::abs(mixed(kRef, t, x1, x2) - v0) < 1e-10);
      }
    }
  }
  CHECK(std::abs(mixed(kRef, 1.0, 0.3, -0.4)) < 1e-11);  // t = t0
}

TEST_CASE("joint_density integrates to one") {
  const oracle::GridSpec spec = oracle::auto_grid_spec(kRef, 0.7, 256);
  long double acc = 0.0L;
  const oracle::Axis ax = spec.position_axis();
  for (int i = 0; i < ax.n; ++i) {
    for (int j = 0; j < ax.n; ++j) {
      acc += joint_density(ax.value(i), ax.value(j), 0.7, kRef);
    }
  }
  const double integral = static_cast<double>(acc) * ax.step * ax.step;
  CHECK(std::abs(integral - 1.0) < 1e-8);
}

TEST_CASE("schmidt_coefficient geometric spectrum") {
  CHECK(rel_err(schmidt_coefficient(0, kRef), 0.64) < 1e-15);
  CHECK(rel_err(schmidt_coefficient(1, kRef), 0.2304) < 1e-15);
  CHECK(rel_err(schmidt_coefficient(2, kRef) / schmidt_coefficient(1, kRef),
                0.36) < 1e-14);

  const BreakupParams sym(1.7, 1.7);
  CHECK(schmidt_coefficient(0, sym) == 1.0);
  CHECK(schmidt_coefficient(1, sym) == 0.0);
  CHECK(schmidt_coefficient(7, sym) == 0.0);

  CHECK_THROWS_AS(schmidt_coefficient(-1, kRef), std::invalid_argument);

  // partial sums match the closed geometric form and converge to 1
  const double q = 0.36;
  long double sum = 0.0L;
  for (int n = 0; n <= 60; ++n) {
    sum += schmidt_coefficient(n, kRef);
    const double closed = 0.64 * (1.0 - std::pow(q, n + 1)) / (1.0 - q);
    CHECK(rel_err(static_cast<double>(sum), closed) < 1e-13);
  }
  CHECK(rel_err(static_cast<double>(sum), 1.0) < 1e-13);
}

TEST_CASE("schmidt_number equals the inverse purity of the spectrum") {
  CHECK(schmidt_number(BreakupParams(1.0, 1.0)) == 1.0);
  CHECK(rel_err(schmidt_number(kRef), 2.125) < 1e-15);
  // (0.64^2 / (1 - 0.36^2))^{-1} = 2.125
  CHECK(rel_err(1.0 / (0.64 * 0.64 / (1.0 - 0.36 * 0.36)), 2.125) < 1e-15);

  auto rng = testutil::make_rng(7u);
  std::uniform_real_distribution<double> dist(0.3, 3.0);
  for (int i = 0; i < 50; ++i) {
    const BreakupParams p(dist(rng), dist(rng));
    long double purity = 0.0L;
    for (int n = 0; n < 400; ++n) {
      const double l = schmidt_coefficient(n, p);
      purity += static_cast<long double>(l) * l;
      if (l < 1e-40) break;
    }
    CHECK(rel_err(static_cast<double>(1.0L / purity), schmidt_number(p)) <
          1e-13);
  }
}

TEST_CASE("schmidt_mode: ground state, orthonormality, pure-phase chirp") {
  for (double kappa : {-2.0, 0.0, 0.5, 3.0}) {
    const Complex v = schmidt_mode(0, kappa, 0.0);
    CHECK(v.imag() == 0.0);
    CHECK(rel_err(v.real(), std::pow(pi, -0.25) * std::exp(-0.5 * kappa * kappa)) <
          1e-14);
  }

  // Gram matrix of modes 0..9 on a fine grid = identity to 1e-8. The chirp
  // cancels inside the inner product, so run it at tau != 0.
  const double tau = 0.7;
  const int n_quad = 6000;
  const double lo = -15.0, hi = 15.0;
  const double h = (hi - lo) / n_quad;
  for (int m = 0; m < 10; ++m) {
    for (int n = m; n < 10; ++n) {
      std::complex<long double> acc = 0.0L;
      for (int i = 0; i < n_quad; ++i) {
        const double kappa = lo + (i + 0.5) * h;
        const Complex a = schmidt_mode(m, kappa, tau);
        const Complex b = schmidt_mode(n, kappa, tau);
        acc += static_cast<std::complex<long double>>(std::conj(a) * b);
      }
      const Complex g(static_cast<double>(acc.real() * h),
                      static_cast<double>(acc.imag() * h));
      const double expected = m == n ? 1.0 : 0.0;
      CHECK(std::abs(g - Complex(expected, 0.0)) < 1e-8);
    }
  }

  // |phi_n(kappa, tau)| does not depend on tau
  for (int n : {0, 3, 8}) {
    for (double kappa : {-1.0, 0.4, 2.2}) {
      const double m0 = std::abs(schmidt_mode(n, kappa, 0.0));
      CHECK(rel_err(std::abs(schmidt_mode(n, kappa, 5.0)), m0) < 1e-14);
    }
  }
}

TEST_CASE("schmidt_mode stays finite and normalized at n = 200") {
  // normalized recurrence: no factorial overflow
  const int n = 200;
  const double lo = -25.0, hi = 25.0;
  const int n_quad = 50000;
  const double h = (hi - lo) / n_quad;
  long double acc = 0.0L;
  for (int i = 0; i < n_quad; ++i) {
    const double kappa = lo + (i + 0.5) * h;
    const double v = schmidt_mode(n, kappa, 0.0).real();
    CHECK(std::isfinite(v));
    acc += static_cast<long double>(v) * v;
  }
  CHECK(std::abs(static_cast<double>(acc) * h - 1.0) < 1e-8);
}

TEST_CASE("schmidt_partial_sum: product state needs a single term") {
  const BreakupParams sym(1.4, 1.4);
  for (double t : {0.0, 1.2}) {
    for (double k1 : {-1.0, 0.3}) {
      for (double k2 : {-0.6, 0.9}) {
        const Complex expansion = schmidt_partial_sum(0, k1, k2, t, sym);
        const Complex direct = psi_momentum(k1, k2, t, sym);
        CHECK(std::abs(expansion - direct) < 1e-14);
      }
    }
  }
}

TEST_CASE("schmidt_partial_sum converges to psi_momentum on a grid") {
  // discrete L2 over [-8, 8]^2; the analytic truncation tail after n_max=40
  // is 0.36^41 ~ 6e-19, so quadrature/rounding dominates.
  const int n = 256;
  const double lo = -8.0, h = 16.0 / n;
  for (double t : {0.0, 1.0}) {
    long double err2 = 0.0L;
    for (int i = 0; i < n; ++i) {
      const double k1 = lo + (i + 0.5) * h;
      for (int j = 0; j < n; ++j) {
        const double k2 = lo + (j + 0.5) * h;
        const Complex d = schmidt_partial_sum(40, k1, k2, t, kRef) -
                          psi_momentum(k1, k2, t, kRef);
        err2 += static_cast<long double>(std::norm(d));
      }
    }
    CHECK(std::sqrt(static_cast<double>(err2) * h * h) < 1e-6);
  }
}

TEST_CASE("schmidt_partial_sum truncation error matches the analytic tail") {
  // after n_max = 1 the missing mass is sum_{n>=2} lambda_n = 0.1296,
  // so the L2 distance is exactly 0.36 for (a, b) = (2, 0.5).
  const int n = 512;
  const double lo = -9.0, h = 18.0 / n;
  long double err2 = 0.0L;
  for (int i = 0; i < n; ++i) {
    const double k1 = lo + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double k2 = lo + (j + 0.5) * h;
      const Complex d = schmidt_partial_sum(1, k1, k2, 0.0, kRef) -
                        psi_momentum(k1, k2, 0.0, kRef);
      err2 += static_cast<long double>(std::norm(d));
    }
  }
  const double l2 = std::sqrt(static_cast<double>(err2) * h * h);
  CHECK(std::abs(l2 - 0.36) < 1e-8);

  // residuals are bounded by the analytic tail for growing n_max
  for (int n_max : {3, 5, 8}) {
    long double tail = 0.0L;
    for (int m = n_max + 1; m < 200; ++m) tail += schmidt_coefficient(m, kRef);
    long double res2 = 0.0L;
    const int nc = 128;
    const double hc = 18.0 / nc;
    for (int i = 0; i < nc; ++i) {
      const double k1 = lo + (i + 0.5) * hc;
      for (int j = 0; j < nc; ++j) {
        const double k2 = lo + (j + 0.5) * hc;
        const Complex d = schmidt_partial_sum(n_max, k1, k2, 0.0, kRef) -
                          psi_momentum(k1, k2, 0.0, kRef);
        res2 += static_cast<long double>(std::norm(d));
      }
    }
    const double res = std::sqrt(static_cast<double>(res2) * hc * hc);
    CHECK(res <= std::sqrt(static_cast<double>(tail)) * (1.0 + 1e-10));
  }
}

TEST_CASE("pure_phase_psi: factorized density, real at nu = 0") {
  const PurePhaseParams real_case(0.8, 0.0);
  for (double x1 : {-1.0, 0.5}) {
    for (double x2 : {-0.7, 1.2}) {
      const Complex v = pure_phase_psi(x1, x2, real_case);
      CHECK(v.imag() == 0.0);
      const double expected = 0.8 * std::sqrt(2.0 / pi) *
                              std::exp(-0.64 * (x1 * x1 + x2 * x2));
      CHECK(rel_err(v.real(), expected) < 1e-14);
    }
  }

  const PurePhaseParams q(1.0, 1.3);
  for (double x1 : {-1.5, 0.4, 0.9}) {
    for (double x2 : {-0.3, 0.8}) {
      const double lhs = std::norm(pure_phase_psi(x1, x2, q)) *
                         std::norm(pure_phase_psi(0.0, 0.0, q));
      const double rhs = std::norm(pure_phase_psi(x1, 0.0, q)) *
                         std::norm(pure_phase_psi(0.0, x2, q));
      CHECK(rel_err(lhs, rhs) < 1e-13);
    }
  }

  CHECK_THROWS_AS(PurePhaseParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PurePhaseParams(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("pure_phase_psi is entangled for nu > 0 despite the factorized density") {
  const PurePhaseParams q(1.0, 1.0);
  const auto grid = oracle::normalize(oracle::discretize(
      [&q](double x1, double x2) { return pure_phase_psi(x1, x2, q); },
      oracle::auto_grid_spec(q, 128), oracle::SpaceTag::position));
  const double K = oracle::schmidt_svd(grid).K_numeric;
  CHECK(K > 1.001);

  const PurePhaseParams q0(1.0, 0.0);
  const auto grid0 = oracle::normalize(oracle::discretize(
      [&q0](double x1, double x2) { return pure_phase_psi(x1, x2, q0); },
      oracle::auto_grid_spec(q0, 128), oracle::SpaceTag::position));
  CHECK(std::abs(oracle::schmidt_svd(grid0).K_numeric - 1.0) < 1e-6);
}

TEST_CASE("quadrature helper sanity") {
  CHECK(std::abs(quad([](double x) { return std::exp(-x * x); }, -10.0, 10.0,
                      2000) -
                 std::sqrt(pi)) < 1e-12);
}
