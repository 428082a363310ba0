#include "breakup/schmidt_svd.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace breakup::oracle {

namespace {
constexpr double kLambdaFloor = 1e-14;
using AmplitudeMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
}  // namespace

SchmidtSpectrum schmidt_svd(const Grid2D& g) {
  if (std::abs(g.norm() - 1.0) > 1e-8) {
    throw std::invalid_argument(
        "schmidt_svd: grid must be normalized to unit discrete L2 norm");
  }
  Eigen::Map<const AmplitudeMatrix> m(g.values.data(), g.axis1.n, g.axis2.n);

  // The squared singular values are the eigenvalues of the Gram matrix;
  // only the spectrum is needed, so the Hermitian eigensolver does the job
  // of a full SVD at a fraction of the cost.
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("schmidt_svd: eigensolver failed to converge");
  }

  const double measure = g.axis1.step * g.axis2.step;
  SchmidtSpectrum spec;
  const auto& eigs = solver.eigenvalues();  // ascending
  spec.lambdas.reserve(eigs.size());
  for (Eigen::Index i = eigs.size(); i-- > 0;) {
    const double lambda = eigs[i] * measure;
    if (lambda < kLambdaFloor) break;  // noise floor; rest is smaller
    spec.lambdas.push_back(lambda);
  }
  if (spec.lambdas.empty()) {
    throw std::runtime_error("schmidt_svd: empty spectrum");
  }

  long double purity = 0.0L;
  for (double l : spec.lambdas) purity += static_cast<long double>(l) * l;
  spec.K_numeric = static_cast<double>(1.0L / purity);
  return spec;
}

}  // namespace breakup::oracle
