#include "breakup/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "breakup/observables.hpp"

namespace breakup::oracle {

namespace {
constexpr double pi = std::numbers::pi;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

GridSpec::GridSpec(int n_, double extent_) : n(n_), extent(extent_) {
  if (!power_of_two(n) || n < 64) {
    throw std::invalid_argument("GridSpec: n must be a power of two >= 64");
  }
  if (!std::isfinite(extent) || extent <= 0.0) {
    throw std::invalid_argument("GridSpec: extent must be finite and > 0");
  }
}

Axis GridSpec::position_axis() const {
  return Axis{-extent, 2.0 * extent / n, n};
}

Axis GridSpec::momentum_axis() const {
  const double dk = pi / extent;
  return Axis{-0.5 * n * dk, dk, n};
}

double Grid2D::norm() const {
  long double acc = 0.0L;
  for (const Complex& z : values) acc += static_cast<long double>(std::norm(z));
  acc *= static_cast<long double>(axis1.step) * axis2.step;
  return static_cast<double>(std::sqrt(acc));
}

Grid2D discretize(const std::function<Complex(double, double)>& f,
                  const GridSpec& spec, SpaceTag tag) {
  Grid2D g;
  g.tag = tag;
  g.axis1 = tag == SpaceTag::momentum ? spec.momentum_axis()
                                      : spec.position_axis();
  g.axis2 = tag == SpaceTag::position ? spec.position_axis()
                                      : spec.momentum_axis();
  g.values.resize(static_cast<std::size_t>(spec.n) * spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double c1 = g.axis1.value(i);
    for (int j = 0; j < spec.n; ++j) {
      const double c2 = g.axis2.value(j);
      const Complex v = f(c1, c2);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "discretize: non-finite sample at index (" << i << ", " << j
            << "), coordinates (" << c1 << ", " << c2 << ")";
        throw std::runtime_error(msg.str());
      }
      g.at(i, j) = v;
    }
  }
  return g;
}

Grid2D normalize(Grid2D g) {
  const double n = g.norm();
  if (n == 0.0) {
    throw std::invalid_argument("normalize: grid is identically zero");
  }
  const double inv = 1.0 / n;
  for (Complex& z : g.values) z *= inv;
  return g;
}

Moments moments(const Grid2D& g) {
  const int n1 = g.axis1.n;
  const int n2 = g.axis2.n;
  long double mass = 0.0L, m1 = 0.0L, m2 = 0.0L;
  long double s11 = 0.0L, s22 = 0.0L, s12 = 0.0L;
  for (int i = 0; i < n1; ++i) {
    const double c1 = g.axis1.value(i);
    for (int j = 0; j < n2; ++j) {
      const double c2 = g.axis2.value(j);
      const long double w = std::norm(g.at(i, j));
      mass += w;
      m1 += w * c1;
      m2 += w * c2;
      s11 += w * c1 * c1;
      s22 += w * c2 * c2;
      s12 += w * c1 * c2;
    }
  }
  if (mass == 0.0L) {
    throw std::invalid_argument("moments: grid is identically zero");
  }
  Moments out;
  out.mean1 = static_cast<double>(m1 / mass);
  out.mean2 = static_cast<double>(m2 / mass);
  out.var1 = static_cast<double>(s11 / mass) - out.mean1 * out.mean1;
  out.var2 = static_cast<double>(s22 / mass) - out.mean2 * out.mean2;
  out.cov12 = static_cast<double>(s12 / mass) - out.mean1 * out.mean2;
  return out;
}

SliceStats conditional_slice(const Grid2D& g, int conditioned_axis,
                             double value) {
  if (conditioned_axis != 1 && conditioned_axis != 2) {
    throw std::invalid_argument("conditional_slice: axis must be 1 or 2");
  }
  const Axis& fixed = conditioned_axis == 1 ? g.axis1 : g.axis2;
  const Axis& free = conditioned_axis == 1 ? g.axis2 : g.axis1;
  const double pos = (value - fixed.origin) / fixed.step;
  const int idx = static_cast<int>(std::lround(pos));
  if (idx < 0 || idx >= fixed.n) {
    throw std::invalid_argument(
        "conditional_slice: conditioning value lies outside the grid");
  }

  long double mass = 0.0L, m = 0.0L, s = 0.0L;
  for (int j = 0; j < free.n; ++j) {
    const long double w = conditioned_axis == 1 ? std::norm(g.at(idx, j))
                                                : std::norm(g.at(j, idx));
    const double c = free.value(j);
    mass += w;
    m += w * c;
    s += w * c * c;
  }
  if (mass * free.step < 1e-300L) {
    throw std::runtime_error(
        "conditional_slice: conditioning on a negligible-probability value");
  }
  SliceStats out;
  out.mean = static_cast<double>(m / mass);
  out.variance = static_cast<double>(s / mass) - out.mean * out.mean;
  return out;
}

GridSpec auto_grid_spec(const BreakupParams& p, double t, int n) {
  const double sigma_x = std::sqrt(var_x_single(t, p));
  const double sigma_k = std::sqrt(var_k_single(p));
  const double extent = 1.05 * std::sqrt(0.5 * n * pi * sigma_x / sigma_k);
  return GridSpec(n, extent);
}

GridSpec auto_grid_spec(const PurePhaseParams& q, int n) {
  const double mu2 = q.mu * q.mu;
  const double nu2 = q.nu * q.nu;
  // sigma_x / sigma_k = 1 / sqrt(4 mu^4 + nu^4)
  const double ratio = 1.0 / std::sqrt(4.0 * mu2 * mu2 + nu2 * nu2);
  const double extent = 1.05 * std::sqrt(0.5 * n * pi * ratio);
  return GridSpec(n, extent);
}

}  // namespace breakup::oracle
