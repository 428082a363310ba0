#include "breakup/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "internal.hpp"

namespace breakup::oracle {

namespace {

constexpr double pi = std::numbers::pi;

// The FFTW planner is not thread-safe; plan creation/destruction is guarded.
// Execution on distinct buffers is safe concurrently.
std::mutex planner_mutex;

struct FftwBuffer {
  fftw_complex* data = nullptr;
  explicit FftwBuffer(std::size_t n) {
    data = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

struct PlanGuard {
  fftw_plan plan = nullptr;
  ~PlanGuard() {
    if (plan) {
      std::lock_guard<std::mutex> lock(planner_mutex);
      fftw_destroy_plan(plan);
    }
  }
};

// With x_j = (j - n/2) dx and k_m = (m - n/2) dk, dk dx = 2 pi / n,
//   exp(-i k_m x_j) = exp(-2 pi i m j / n) (-1)^m (-1)^j exp(-i pi n / 2),
// so the symmetric-grid transform is a plain DFT wrapped in checkerboard
// sign masks. The residual constant exp(-i pi n/2) is +1 because GridSpec
// forces n to a power of two >= 64 (hence divisible by 4).
Axis conjugate_axis(const Axis& a) {
  const double step = 2.0 * pi / (a.n * a.step);
  return Axis{-0.5 * a.n * step, step, a.n};
}

void require_multiple_of_four(int n) {
  if (n % 4 != 0) {
    throw std::invalid_argument("transform: axis length must be divisible by 4");
  }
}

// Full 2-D transform with the given DFT sign; scale multiplies the result.
std::vector<Complex> masked_dft_2d(const std::vector<Complex>& in, int n1,
                                   int n2, int sign, double scale) {
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  FftwBuffer buf(total);
  PlanGuard guard;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    guard.plan = fftw_plan_dft_2d(n1, n2, buf.data, buf.data, sign,
                                  FFTW_ESTIMATE);
  }
  if (!guard.plan) throw std::runtime_error("transform: FFTW planning failed");

  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n2 + j;
      const double s = ((i + j) & 1) ? -1.0 : 1.0;
      buf.data[idx][0] = s * in[idx].real();
      buf.data[idx][1] = s * in[idx].imag();
    }
  }
  fftw_execute(guard.plan);

  std::vector<Complex> out(total);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n2 + j;
      const double s = ((i + j) & 1) ? -scale : scale;
      out[idx] = Complex(s * buf.data[idx][0], s * buf.data[idx][1]);
    }
  }
  return out;
}

// Row-wise 1-D transform over axis 2 (contiguous direction).
std::vector<Complex> masked_dft_rows(const std::vector<Complex>& in, int n1,
                                     int n2, int sign, double scale) {
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  FftwBuffer buf(total);
  PlanGuard guard;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    int len = n2;
    guard.plan =
        fftw_plan_many_dft(1, &len, n1, buf.data, nullptr, 1, n2, buf.data,
                           nullptr, 1, n2, sign, FFTW_ESTIMATE);
  }
  if (!guard.plan) throw std::runtime_error("transform: FFTW planning failed");

  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n2 + j;
      const double s = (j & 1) ? -1.0 : 1.0;
      buf.data[idx][0] = s * in[idx].real();
      buf.data[idx][1] = s * in[idx].imag();
    }
  }
  fftw_execute(guard.plan);

  std::vector<Complex> out(total);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n2 + j;
      const double s = (j & 1) ? -scale : scale;
      out[idx] = Complex(s * buf.data[idx][0], s * buf.data[idx][1]);
    }
  }
  return out;
}

void require_tag(const Grid2D& g, SpaceTag expected, const char* op) {
  if (g.tag != expected) {
    throw std::invalid_argument(std::string(op) +
                                ": grid has the wrong space tag");
  }
}

}  // namespace

Grid2D to_momentum(const Grid2D& g) {
  require_tag(g, SpaceTag::position, "to_momentum");
  require_multiple_of_four(g.axis1.n);
  require_multiple_of_four(g.axis2.n);
  Grid2D out;
  out.tag = SpaceTag::momentum;
  out.axis1 = conjugate_axis(g.axis1);
  out.axis2 = conjugate_axis(g.axis2);
  const double scale = g.axis1.step * g.axis2.step / (2.0 * pi);
  out.values = masked_dft_2d(g.values, g.axis1.n, g.axis2.n, FFTW_FORWARD,
                             scale);
  return out;
}

Grid2D to_position(const Grid2D& g) {
  require_tag(g, SpaceTag::momentum, "to_position");
  require_multiple_of_four(g.axis1.n);
  require_multiple_of_four(g.axis2.n);
  Grid2D out;
  out.tag = SpaceTag::position;
  out.axis1 = conjugate_axis(g.axis1);
  out.axis2 = conjugate_axis(g.axis2);
  const double scale = g.axis1.step * g.axis2.step / (2.0 * pi);
  out.values = masked_dft_2d(g.values, g.axis1.n, g.axis2.n, FFTW_BACKWARD,
                             scale);
  return out;
}

Grid2D partial_transform_x2(const Grid2D& g) {
  if (g.tag != SpaceTag::position && g.tag != SpaceTag::hybrid_x1_k2) {
    throw std::invalid_argument(
        "partial_transform_x2: grid must be position or hybrid tagged");
  }
  require_multiple_of_four(g.axis2.n);
  const bool forward = g.tag == SpaceTag::position;
  Grid2D out;
  out.tag = forward ? SpaceTag::hybrid_x1_k2 : SpaceTag::position;
  out.axis1 = g.axis1;
  out.axis2 = conjugate_axis(g.axis2);
  const double scale = g.axis2.step / std::sqrt(2.0 * pi);
  out.values = masked_dft_rows(g.values, g.axis1.n, g.axis2.n,
                               forward ? FFTW_FORWARD : FFTW_BACKWARD, scale);
  return out;
}

Grid2D evolve_free(const Grid2D& g, double t, const BreakupParams& p) {
  require_tag(g, SpaceTag::momentum, "evolve_free");
  const double q2 = detail::q_squared(t, p);
  const double k_edge =
      std::max(std::abs(g.axis1.origin), std::abs(g.axis2.origin));
  const double dk = std::max(g.axis1.step, g.axis2.step);
  const double increment = q2 * k_edge * dk;
  if (increment >= pi) {
    const double t_max = pi * p.m / (p.hbar * k_edge * dk);
    std::ostringstream msg;
    msg << "evolve_free: chirp not resolvable at t = " << t
        << " (edge phase increment " << increment
        << " >= pi); maximum safe t for this grid is " << t_max;
    throw std::domain_error(msg.str());
  }
  // the chirp factorizes over the axes: one phase vector per axis
  auto axis_phases = [q2](const Axis& axis) {
    std::vector<Complex> phases(axis.n);
    for (int i = 0; i < axis.n; ++i) {
      const double k = axis.value(i);
      phases[i] = std::polar(1.0, -0.5 * q2 * k * k);
    }
    return phases;
  };
  const std::vector<Complex> p1 = axis_phases(g.axis1);
  const std::vector<Complex> p2 = axis_phases(g.axis2);
  Grid2D out = g;
  for (int i = 0; i < g.axis1.n; ++i) {
    for (int j = 0; j < g.axis2.n; ++j) {
      out.at(i, j) *= p1[i] * p2[j];
    }
  }
  return out;
}

double max_safe_time(const GridSpec& spec, const BreakupParams& p) {
  const Axis k = spec.momentum_axis();
  const double k_max = std::abs(k.origin);
  return pi * p.m / (p.hbar * k_max * k.step);
}

bool nyquist_safe(const GridSpec& spec, double t, const BreakupParams& p) {
  detail::q_squared(t, p);  // validates t
  return t < max_safe_time(spec, p);
}

}  // namespace breakup::oracle
