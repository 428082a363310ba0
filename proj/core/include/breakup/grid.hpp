#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "breakup/params.hpp"

namespace breakup::oracle {

using Complex = std::complex<double>;

enum class SpaceTag { position, momentum, hybrid_x1_k2 };

/// Uniformly spaced axis: value(i) = origin + i * step, i = 0..n-1.
struct Axis {
  double origin = 0.0;
  double step = 0.0;
  int n = 0;

  double value(int i) const { return origin + step * i; }
};

/// Discretization request: n x n samples (n a power of two, >= 64) of the
/// symmetric position square [-extent, extent). The paired momentum axis
/// has spacing pi/extent and half-width pi n / (2 extent), so the discrete
/// transforms below are exactly unitary between the two.
struct GridSpec {
  int n;
  double extent;

  GridSpec(int n, double extent);

  Axis position_axis() const;
  Axis momentum_axis() const;
};

/// Dense complex two-particle amplitude; values[i * axis2.n + j] is the
/// sample at (axis1.value(i), axis2.value(j)). Treated as immutable after
/// construction: every operation returns a new grid.
struct Grid2D {
  SpaceTag tag = SpaceTag::position;
  Axis axis1;
  Axis axis2;
  std::vector<Complex> values;

  Complex at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * axis2.n + j];
  }
  Complex& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * axis2.n + j];
  }

  /// Discrete L2 norm sqrt(sum |psi|^2 d1 d2).
  double norm() const;
};

struct Moments {
  double mean1;
  double mean2;
  double var1;
  double var2;
  double cov12;
};

struct SliceStats {
  double mean;
  double variance;
};

/// Sample f on the axes selected by tag. Throws if any sample is non-finite,
/// naming the offending grid point.
Grid2D discretize(const std::function<Complex(double, double)>& f,
                  const GridSpec& spec, SpaceTag tag);

/// Rescale to unit discrete L2 norm. Throws on an all-zero grid.
Grid2D normalize(Grid2D g);

/// Quadrature moments of |psi|^2 (normalized internally, so the input grid
/// need not be).
Moments moments(const Grid2D& g);

/// Statistics of one coordinate conditioned on the other: fixes the
/// conditioned_axis (1 or 2) at the grid line nearest `value`, renormalizes
/// that line as a 1-D density and returns its mean and variance. Throws when
/// the requested value lies outside the grid or carries negligible
/// probability (line norm below 1e-300).
SliceStats conditional_slice(const Grid2D& g, int conditioned_axis,
                             double value);

/// Grid sized for the breakup state at time t: the extent balances position
/// against momentum coverage, extent = 1.05 sqrt(n pi/2 * sigma_x(t)/sigma_k).
/// Since sigma_x(t) >= Q^2 sigma_k, this extent always satisfies the chirp
/// sampling bound of max_safe_time, with >= 17 sigma of coverage on both
/// axes at n = 512.
GridSpec auto_grid_spec(const BreakupParams& p, double t, int n = 512);

/// Same balancing for the pure phase state: sigma_x = 1/(2 mu),
/// sigma_k = sqrt(4 mu^4 + nu^4)/(2 mu).
GridSpec auto_grid_spec(const PurePhaseParams& q, int n = 512);

}  // namespace breakup::oracle
