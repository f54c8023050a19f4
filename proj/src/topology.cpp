#include "nrmm/topology.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace nrmm {

namespace {

// Reduce to (-pi, pi].
double wrap_phase(double phi) {
  phi = std::remainder(phi, 2.0 * M_PI);
  if (phi <= -M_PI) phi = M_PI;
  return phi;
}

}  // namespace

LogDet log_det(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("log_det: matrix not square");
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Matrix lu = m;
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lu.data(), n, ipiv.data());
  if (info < 0) throw std::invalid_argument("log_det: illegal argument to zgetrf");
  if (info > 0)
    throw SingularMatrixError("log_det: exactly singular at pivot " +
                              std::to_string(info));

  double log_abs = 0.0;
  double phase = 0.0;
  for (lapack_int i = 0; i < n; ++i) {
    const Complex u = lu(i, i);
    if (u == Complex(0.0, 0.0))
      throw SingularMatrixError("log_det: zero pivot at index " +
                                std::to_string(i + 1));
    log_abs += std::log(std::abs(u));
    phase += std::arg(u);
    if (ipiv[static_cast<std::size_t>(i)] != i + 1) phase += M_PI;  // row swap
  }
  return LogDet{log_abs, wrap_phase(phase)};
}

WindingResult winding_number(const ModelParams& params, Complex base_energy,
                             int n_theta) {
  if (n_theta < 64)
    throw std::invalid_argument("winding_number: n_theta must be >= 64");
  validate(params);

  const auto det_phase = [&](double theta) {
    ModelParams p = params;
    p.theta = theta;
    Matrix m = build_hamiltonian(p);
    m.diagonal().array() -= base_energy;
    try {
      return log_det(m).phase;
    } catch (const SingularMatrixError& e) {
      throw WindingError("winding_number: singular determinant at theta = " +
                             std::to_string(theta) + " (" + e.what() + ")",
                         theta);
    }
  };

  struct Sample {
    double theta;
    double phase;
  };
  std::vector<Sample> grid;
  grid.reserve(static_cast<std::size_t>(n_theta) + 1);
  for (int j = 0; j <= n_theta; ++j) {
    const double theta = 2.0 * M_PI * j / n_theta;
    grid.push_back({theta, det_phase(theta)});
  }

  // Bisect any step whose unwrapped increment reaches pi/2, down to a
  // minimum step of (2pi/n_theta) / 2^12.
  const double min_step = (2.0 * M_PI / n_theta) / 4096.0;
  bool refined = false;
  bool saturated = false;
  for (;;) {
    std::vector<Sample> inserts;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double d = wrap_phase(grid[i + 1].phase - grid[i].phase);
      if (std::abs(d) < M_PI / 2.0) continue;
      const double width = grid[i + 1].theta - grid[i].theta;
      if (width <= min_step) {
        saturated = true;
        continue;
      }
      const double mid = 0.5 * (grid[i].theta + grid[i + 1].theta);
      inserts.push_back({mid, det_phase(mid)});
    }
    if (inserts.empty()) break;
    refined = true;
    grid.insert(grid.end(), inserts.begin(), inserts.end());
    std::sort(grid.begin(), grid.end(),
              [](const Sample& a, const Sample& b) { return a.theta < b.theta; });
  }

  WindingResult result;
  result.base_energy = base_energy;
  result.refined = refined;
  result.theta_grid.reserve(grid.size());
  result.phase_trace.reserve(grid.size());
  double acc = grid.front().phase;
  result.theta_grid.push_back(grid.front().theta);
  result.phase_trace.push_back(acc);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    acc += wrap_phase(grid[i + 1].phase - grid[i].phase);
    result.theta_grid.push_back(grid[i + 1].theta);
    result.phase_trace.push_back(acc);
  }

  const double turns =
      (result.phase_trace.back() - result.phase_trace.front()) / (2.0 * M_PI);
  const double rounded = std::round(turns);
  if (saturated || std::abs(turns - rounded) > 1e-6)
    throw WindingError(
        "winding_number: accumulated phase " + std::to_string(turns) +
        " turns is not an integer after maximal refinement (base energy on "
        "the spectral curve?)");
  result.w = static_cast<int>(rounded);
  return result;
}

}  // namespace nrmm
