#include "breakup/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "breakup/observables.hpp"
#include "breakup/schmidt.hpp"
#include "breakup/schmidt_svd.hpp"
#include "breakup/states.hpp"
#include "breakup/transforms.hpp"

namespace breakup::scenarios {

using oracle::Grid2D;
using oracle::GridSpec;
using oracle::SpaceTag;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

void add_check(ProbeReport& rep, std::string label, double value,
               double tolerance, bool pass) {
  rep.quantities.push_back({std::move(label), value, tolerance, pass});
  rep.verdict = rep.verdict && pass;
}

// |value| must stay below tol.
void add_null_check(ProbeReport& rep, std::string label, double value,
                    double tol) {
  add_check(rep, std::move(label), value, tol, std::abs(value) <= tol);
}

GridSpec resolve_spec(const GridChoice& grid, const BreakupParams& p,
                      double t) {
  return grid.extent ? GridSpec(grid.n, *grid.extent)
                     : oracle::auto_grid_spec(p, t, grid.n);
}

std::string nyquist_reason(double t, const GridSpec& spec,
                           const BreakupParams& p) {
  std::ostringstream msg;
  msg << "chirp unresolvable at t = " << t << " on this grid; maximum safe t = "
      << oracle::max_safe_time(spec, p);
  return msg.str();
}

Grid2D momentum_grid_at(const BreakupParams& p, double t,
                        const GridSpec& spec) {
  Grid2D g = oracle::normalize(oracle::discretize(
      [&p](double k1, double k2) { return psi_momentum(k1, k2, 0.0, p); },
      spec, SpaceTag::momentum));
  return oracle::evolve_free(g, t, p);
}

}  // namespace

std::vector<double> uniform_samples(double max, int count) {
  if (count < 1) {
    throw std::invalid_argument("uniform_samples: count must be >= 1");
  }
  if (count == 1) return {0.0};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = (i * max) / (count - 1);
  return out;
}

Figure1Table figure1(const std::vector<double>& r_values,
                     const std::vector<double>& t_over_t0) {
  if (r_values.empty()) {
    throw std::invalid_argument("figure1: r list must not be empty");
  }
  Figure1Table tab;
  tab.r_values = r_values;
  tab.t_over_t0 = t_over_t0;
  tab.C_values.reserve(r_values.size());
  for (double r : r_values) {
    const BreakupParams p(std::exp(0.5 * r), std::exp(-0.5 * r));
    const double t0 = derive_scales(p).t0;
    std::vector<double> row;
    row.reserve(t_over_t0.size());
    for (double u : t_over_t0) row.push_back(c_factor(u * t0, p));
    tab.C_values.push_back(std::move(row));
  }
  return tab;
}

ProbeReport factorization_probe(const BreakupParams& p, const GridChoice& grid,
                                std::optional<double> t_opt) {
  const DerivedScales s = derive_scales(p);
  const double t = t_opt.value_or(s.t0);
  ProbeReport rep;
  rep.name = "factorization";

  add_null_check(rep, "R_x_minus_1", fedorov_ratio_x(t, p) - 1.0, 1e-10);

  const GridSpec spec = resolve_spec(grid, p, t);
  if (!oracle::nyquist_safe(spec, t, p)) {
    rep.skipped.push_back({"grid_checks", nyquist_reason(t, spec, p)});
    return rep;
  }
  const Grid2D momt = momentum_grid_at(p, t, spec);
  const Grid2D post = oracle::to_position(momt);

  const oracle::Moments m = oracle::moments(post);
  const double corr = m.cov12 / std::sqrt(m.var1 * m.var2);
  add_null_check(rep, "position_density_corr", corr, 1e-8);

  const oracle::SchmidtSpectrum spectrum = oracle::schmidt_svd(post);
  add_null_check(rep, "K_numeric_vs_cosh_r",
                 rel_err(spectrum.K_numeric, s.K), 1e-6);
  return rep;
}

ProbeReport uncertainty_cases(const BreakupParams& p) {
  const DerivedScales s = derive_scales(p);
  ProbeReport rep;
  rep.name = "uncertainty_cases";

  const double quarter_k2 = 1.0 / (4.0 * s.K * s.K);
  add_null_check(rep, "einstein_at_0_rel_err",
                 rel_err(einstein_product(0.0, p), quarter_k2), 1e-12);
  add_check(rep, "einstein_at_0_below_quarter", einstein_product(0.0, p), 0.25,
            einstein_product(0.0, p) <= 0.25 + 1e-15);
  add_null_check(rep, "einstein_at_t0_vs_half",
                 rel_err(einstein_product(s.t0, p), 0.5), 1e-12);

  // Case (iii): the asymptote needs u >> e^{|r|} so that both e^{2r} and
  // e^{-2r} are dominated; 100 e^{|r|} puts the ratio within 0.1 percent.
  const double u_asym = 100.0 * std::exp(std::abs(s.r));
  const double t_asym = u_asym * s.t0;
  const double asym = u_asym * u_asym / (4.0 * s.K * s.K);
  add_null_check(rep, "einstein_asymptote_ratio_minus_1",
                 einstein_product(t_asym, p) / asym - 1.0, 0.01);

  double h_min = heisenberg_product(t_asym, p);
  for (double t : uniform_samples(3.0 * s.t0, 61)) {
    h_min = std::min(h_min, heisenberg_product(t, p));
  }
  add_check(rep, "heisenberg_min", h_min, 0.25, h_min >= 0.25 - 1e-12);
  return rep;
}

ProbeReport pure_phase_probe(const PurePhaseParams& q, const GridChoice& grid) {
  ProbeReport rep;
  rep.name = "pure_phase";
  const GridSpec spec =
      grid.extent ? GridSpec(grid.n, *grid.extent) : oracle::auto_grid_spec(q, grid.n);

  const Grid2D pos = oracle::normalize(oracle::discretize(
      [&q](double x1, double x2) { return pure_phase_psi(x1, x2, q); }, spec,
      SpaceTag::position));

  add_null_check(rep, "cov_x1_x2", oracle::moments(pos).cov12, 1e-8);
  add_null_check(rep, "cov_k1_k2",
                 oracle::moments(oracle::to_momentum(pos)).cov12, 1e-8);

  const double cov_hybrid =
      oracle::moments(oracle::partial_transform_x2(pos)).cov12;
  if (q.nu > 0.0) {
    add_check(rep, "cov_x1_k2_nonzero", cov_hybrid, 0.01,
              std::abs(cov_hybrid) > 0.01);
  } else {
    add_null_check(rep, "cov_x1_k2", cov_hybrid, 1e-8);
  }

  const double K = oracle::schmidt_svd(pos).K_numeric;
  if (q.nu > 0.0) {
    add_check(rep, "K_numeric_gt_1", K, 1e-3, K > 1.0 + 1e-3);
  } else {
    add_null_check(rep, "K_numeric_minus_1", K - 1.0, 1e-6);
  }
  return rep;
}

std::vector<RidgePoint> phase_ridge(const PurePhaseParams& q,
                                    const GridChoice& grid) {
  const GridSpec spec =
      grid.extent ? GridSpec(grid.n, *grid.extent) : oracle::auto_grid_spec(q, grid.n);
  const Grid2D hyb = oracle::partial_transform_x2(oracle::normalize(
      oracle::discretize([&q](double x1, double x2) {
        return pure_phase_psi(x1, x2, q);
      }, spec, SpaceTag::position)));

  const int n1 = hyb.axis1.n;
  const int n2 = hyb.axis2.n;
  std::vector<double> weight(n1, 0.0);
  double w_max = 0.0;
  for (int i = 0; i < n1; ++i) {
    double w = 0.0;
    for (int j = 0; j < n2; ++j) w += std::norm(hyb.at(i, j));
    weight[i] = w;
    w_max = std::max(w_max, w);
  }

  std::vector<RidgePoint> ridge;
  for (int i = 0; i < n1; ++i) {
    if (weight[i] < 1e-6 * w_max) continue;  // argmax meaningless in the tail
    int best = 0;
    double best_v = -1.0;
    for (int j = 0; j < n2; ++j) {
      const double v = std::norm(hyb.at(i, j));
      if (v > best_v) {
        best_v = v;
        best = j;
      }
    }
    ridge.push_back({hyb.axis1.value(i), hyb.axis2.value(best)});
  }
  return ridge;
}

ProbeReport analytic_vs_oracle(const BreakupParams& p,
                               const std::vector<double>& times,
                               const GridChoice& grid) {
  const DerivedScales s = derive_scales(p);
  ProbeReport rep;
  rep.name = "analytic_vs_oracle";

  const std::vector<std::string> labels = {
      "var_k_single", "var_k_coinc",        "var_x_single",
      "var_x_coinc",  "R_p",                "R_x",
      "C",            "heisenberg_product", "einstein_product",
      "schmidt_first8", "K_numeric"};
  std::vector<double> worst(labels.size(), -1.0);
  auto update = [&](const std::string& label, double err) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    const std::size_t idx = it - labels.begin();
    worst[idx] = std::max(worst[idx], err);
  };

  for (double t : times) {
    const GridSpec spec = resolve_spec(grid, p, t);
    if (!oracle::nyquist_safe(spec, t, p)) {
      std::ostringstream label;
      label << "t = " << t;
      rep.skipped.push_back({label.str(), nyquist_reason(t, spec, p)});
      continue;
    }
    const Grid2D momt = momentum_grid_at(p, t, spec);
    const Grid2D post = oracle::to_position(momt);

    const oracle::Moments mk = oracle::moments(momt);
    const oracle::Moments mx = oracle::moments(post);
    const oracle::SliceStats sk = oracle::conditional_slice(momt, 2, 0.0);
    const oracle::SliceStats sx = oracle::conditional_slice(post, 2, 0.0);

    update("var_k_single", rel_err(mk.var1, var_k_single(p)));
    update("var_k_coinc", rel_err(sk.variance, var_k_coinc(p)));
    update("var_x_single", rel_err(mx.var1, var_x_single(t, p)));
    update("var_x_coinc", rel_err(sx.variance, var_x_coinc(t, p)));

    const double rp_grid = std::sqrt(mk.var1 / sk.variance);
    const double rx_grid = std::sqrt(mx.var1 / sx.variance);
    update("R_p", rel_err(rp_grid, fedorov_ratio_p(p)));
    update("R_x", rel_err(rx_grid, fedorov_ratio_x(t, p)));
    update("C", rel_err(rx_grid / rp_grid, c_factor(t, p)));
    update("heisenberg_product",
           rel_err(mx.var1 * mk.var1, heisenberg_product(t, p)));
    update("einstein_product",
           rel_err(sx.variance * sk.variance, einstein_product(t, p)));

    const oracle::SchmidtSpectrum spectrum = oracle::schmidt_svd(momt);
    for (int n = 0; n < 8; ++n) {
      const double lambda = schmidt_coefficient(n, p);
      if (lambda < 1e-13) continue;  // below the SVD noise floor by design
      if (n < static_cast<int>(spectrum.lambdas.size())) {
        update("schmidt_first8", rel_err(spectrum.lambdas[n], lambda));
      } else {
        update("schmidt_first8", 1.0);  // mode missing from the spectrum
      }
    }
    update("K_numeric", rel_err(spectrum.K_numeric, s.K));
  }

  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (worst[i] < 0.0) continue;  // nothing ran for this quantity
    const bool schmidt_scope =
        labels[i] == "schmidt_first8" || labels[i] == "K_numeric";
    const double tol = schmidt_scope ? 1e-6 : 1e-5;
    add_check(rep, labels[i] + "_worst_rel_err", worst[i], tol,
              worst[i] <= tol);
  }
  return rep;
}

}  // namespace breakup::scenarios
