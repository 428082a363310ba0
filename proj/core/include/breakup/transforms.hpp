#pragma once

#include "breakup/grid.hpp"
#include "breakup/params.hpp"

namespace breakup::oracle {

/// Symmetric-convention discrete Fourier transform, position -> momentum.
/// Exactly unitary against its inverse: round trips reproduce the input to
/// ~1e-15 and the discrete norm is preserved (Parseval).
Grid2D to_momentum(const Grid2D& g);

/// Inverse transform, momentum -> position.
Grid2D to_position(const Grid2D& g);

/// Fourier transform along axis 2 only: position -> hybrid (x1, k2).
/// Applied to a hybrid grid it inverts back to position, so a double
/// application is the identity.
Grid2D partial_transform_x2(const Grid2D& g);

/// Free evolution on a momentum grid: multiply by the chirp
/// exp(-i Q^2 (k1^2 + k2^2)/2). Norm-preserving. Throws (naming the maximum
/// safe time) when the chirp is not resolvable on this grid, i.e. when the
/// phase increment between adjacent samples at the grid edge,
/// Q^2 k_max dk, reaches pi.
Grid2D evolve_free(const Grid2D& g, double t, const BreakupParams& p);

/// Largest t for which evolve_free accepts grids of this spec:
///   t_max = pi m / (hbar k_max dk) = 2 m extent^2 / (hbar n pi).
/// Halves when n doubles at fixed extent; grows 4x when extent doubles.
double max_safe_time(const GridSpec& spec, const BreakupParams& p);

bool nyquist_safe(const GridSpec& spec, double t, const BreakupParams& p);

}  // namespace breakup::oracle
