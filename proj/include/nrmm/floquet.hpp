#pragma once

#include <stdexcept>
#include <vector>

#include "nrmm/model.hpp"

namespace nrmm {

struct KickPoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RatioCheck {
  double max_residual;     // over verifiable sites
  int verifiable_sites;
  int unverifiable_sites;  // |denominator| below the floor
};

/// Checks the rearranged eigen-equation per site: with J divided out,
/// the ratio (V psi_n - i X_n) / (V psi_n + i X_n), where
/// X_n = E psi_n - e^{-gamma - i theta/L} psi_{n+1} - e^{+gamma + i theta/L} psi_{n-1}
/// (cyclic), must equal e^{-i 2 pi alpha n}. Returns the max deviation
/// over sites whose denominator exceeds denominator_floor * ||psi||;
/// sites below the floor are ill-conditioned (0/0) and only counted.
/// The ratio amplifies eigensolver noise by 1/|denominator|, so pick the
/// floor to match the precision you want to certify.
RatioCheck eigenpair_ratio_check(Complex energy, const Vector& psi,
                                 const ModelParams& params,
                                 double denominator_floor = 1e-12);

/// Kick function K(x) = 2 arctan[(2/V) cos(x - i gamma) - E/V]
/// (principal complex arctan).
Complex kick_function(double x, Complex energy, double V, double gamma);

/// |e^{-iK(x)} - (1 + iE/V - i(2/V)cos(x-ig)) / (1 - iE/V + i(2/V)cos(x-ig))|.
/// The identity is exact; the return value measures rounding only.
/// Throws KickPoleError when the denominator is below 1e-12.
double kick_identity_check(double x, Complex energy, double V, double gamma);

/// One-period propagator of the equivalent kicked particle on the
/// q-point ring x_m = 2 pi m / q: kick factors e^{-iK(x_m)} diagonal in
/// position, kinetic term a translation by p grid points (equivalently
/// phases e^{-i 2 pi p n / q} per momentum n). Requires L == q.
/// Throws KickPoleError naming the grid point when K has a pole there.
Matrix ring_propagator(const ModelParams& params, Complex energy);

struct RingSpectrum {
  std::vector<double> eigenphases;  // arg of each propagator eigenvalue, sorted
  double min_abs_phase;
};

RingSpectrum ring_propagator_spectrum(const ModelParams& params, Complex energy);

}  // namespace nrmm
