#pragma once

#include <vector>

#include "breakup/grid.hpp"

namespace breakup::oracle {

/// Numerically extracted Schmidt spectrum: descending lambda_n summing to 1,
/// and the Schmidt number K = (sum lambda_n^2)^{-1}.
struct SchmidtSpectrum {
  std::vector<double> lambdas;
  double K_numeric = 1.0;
};

/// Schmidt spectrum of a normalized amplitude grid from its singular
/// spectrum: lambda_n = sigma_n^2 d1 d2, the measure factor fixed by the
/// sum-to-one calibration on product states and frozen. Values below 1e-14
/// are discarded before K is formed. Rejects unnormalized input.
SchmidtSpectrum schmidt_svd(const Grid2D& g);

}  // namespace breakup::oracle
