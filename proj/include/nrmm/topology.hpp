#pragma once

#include <stdexcept>
#include <vector>

#include "nrmm/model.hpp"

namespace nrmm {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LogDet {
  double log_abs;  // log |det|
  double phase;    // arg det, reduced to (-pi, pi]
};

/// LU-based log-determinant: log|det| accumulated as a sum of logs (the
/// determinant itself overflows at the lattice sizes used here), phase
/// from pivot arguments plus the permutation sign. Throws
/// SingularMatrixError on an exactly singular factorization.
LogDet log_det(const Matrix& m);

struct WindingError : std::runtime_error {
  explicit WindingError(const std::string& what, double theta_at = -1.0)
      : std::runtime_error(what), theta(theta_at) {}
  double theta;
};

struct WindingResult {
  int w;
  Complex base_energy;
  std::vector<double> theta_grid;   // final grid, refinements included
  std::vector<double> phase_trace;  // accumulated arg det along the grid
  bool refined;
};

/// Spectral winding of det[H(theta) - E0] over theta in [0, 2pi]:
/// phase increments between consecutive samples, unwrapped by the nearest
/// multiple of 2pi, with adaptive bisection of any step whose increment
/// reaches pi/2. The accumulated phase must land on an integer multiple
/// of 2pi within 1e-6, else WindingError (E0 sits on the spectral curve).
/// params.theta is ignored; n_theta >= 64.
WindingResult winding_number(const ModelParams& params, Complex base_energy = 0.0,
                             int n_theta = 256);

}  // namespace nrmm
