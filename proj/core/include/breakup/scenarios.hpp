#pragma once

#include <optional>
#include <string>
#include <vector>

#include "breakup/grid.hpp"
#include "breakup/params.hpp"

namespace breakup::scenarios {

/// C(t) sampled on an (r, t/t0) lattice; C_values[ri][ti]. Rows are even in
/// r; the r = 0 row is identically 1; each r > 0 row dips to 1/cosh r at
/// t/t0 = 1 and recovers.
struct Figure1Table {
  std::vector<double> r_values;
  std::vector<double> t_over_t0;
  std::vector<std::vector<double>> C_values;
};

/// count uniform samples covering [0, max], endpoints included.
std::vector<double> uniform_samples(double max, int count);

/// Evaluate C(t) for each squeezing parameter r with a = e^{r/2},
/// b = e^{-r/2} (alpha = 1).
Figure1Table figure1(const std::vector<double>& r_values,
                     const std::vector<double>& t_over_t0);

/// One checked quantity inside a probe: the measured value, the tolerance
/// or threshold it was held to, and whether it passed.
struct ProbeQuantity {
  std::string label;
  double value;
  double tolerance;
  bool pass;
};

/// A check that could not run (e.g. chirp unresolvable on the requested
/// grid); recorded with its reason, never counted as a failure.
struct SkippedCheck {
  std::string label;
  std::string reason;
};

struct ProbeReport {
  std::string name;
  std::vector<ProbeQuantity> quantities;
  std::vector<SkippedCheck> skipped;
  bool verdict = true;  // conjunction of the individual passes
};

/// Grid sizing for probes: fixed extent when given, balanced auto-extent
/// per state and time otherwise.
struct GridChoice {
  int n = 512;
  std::optional<double> extent;
};

/// The t = t0 claim: the joint density factorizes (grid correlation below
/// 1e-8) and R_x = 1, while the SVD Schmidt number still equals cosh r —
/// the entanglement has moved entirely into the phase. Evaluating at a
/// different t makes the same checks fail unless a = b.
ProbeReport factorization_probe(const BreakupParams& p,
                                const GridChoice& grid = {},
                                std::optional<double> t = std::nullopt);

/// The three regimes of the conditional (Einstein) uncertainty product:
/// 1/(4 cosh^2 r) at t = 0, exactly 1/2 at t = t0, the u^2/(4 cosh^2 r)
/// asymptote for t/t0 >> e^|r|; plus heisenberg_product >= 1/4 throughout.
ProbeReport uncertainty_cases(const BreakupParams& p);

/// Variance blindness of the pure phase state: position and momentum
/// covariances both vanish, the hybrid (x1, k2) covariance does not, and
/// the numeric Schmidt number exceeds 1 for nu > 0 (equals 1 at nu = 0).
ProbeReport pure_phase_probe(const PurePhaseParams& q,
                             const GridChoice& grid = {});

struct RidgePoint {
  double x1;
  double k2_argmax;
};

/// Column-wise argmax of the hybrid density |psi(x1, k2)|^2, restricted to
/// columns carrying non-negligible weight. For the pure phase state the
/// ridge tracks k2 = nu^2 x1.
std::vector<RidgePoint> phase_ridge(const PurePhaseParams& q,
                                    const GridChoice& grid = {});

/// Cross-validation harness: for each time, rebuild the state on a grid
/// (discretize the t = 0 momentum amplitude, chirp-evolve, transform back)
/// and compare every closed-form observable and the Schmidt spectrum
/// against grid quadrature/SVD. Reports the worst relative error per
/// quantity; times failing the chirp bound are skipped with a reason.
ProbeReport analytic_vs_oracle(const BreakupParams& p,
                               const std::vector<double>& times,
                               const GridChoice& grid = {});

}  // namespace breakup::scenarios
