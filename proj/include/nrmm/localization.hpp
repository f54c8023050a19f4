#pragma once

#include <vector>

#include "nrmm/model.hpp"
#include "nrmm/spectral.hpp"

namespace nrmm {

enum class StateLabel { extended, localized };

struct StateDiagnostics {
  Complex energy;
  double ipr;
  double ellipse_value;  // +inf in the gamma = 0 limit
  StateLabel label;
};

struct IprSummary {
  double min;
  double max;
  double mean;
};

/// Sum |psi_n|^4 of a normalized state. Renormalizes when the input norm
/// deviates from 1 by more than 1e-12; throws on the zero vector.
double ipr(const Vector& psi);

/// Componentwise min/max/mean of the IPRs over all states.
/// Requires eigenvectors.
IprSummary ipr_summary(const Spectrum& s);

/// Left-hand side of V^2/(2J sinh g)^2 + (Re E)^2/(2J cosh g)^2 = 1.
/// < 1 predicts extended, > 1 localized. Throws for gamma == 0 (the
/// Hermitian limit has no mobility edge).
double ellipse_value(Complex energy, double J, double V, double gamma);

/// Per-state diagnostics. The label source is the imaginary-energy
/// criterion (extended iff |Im E| > im_threshold); ipr and ellipse_value
/// are carried for cross-validation.
std::vector<StateDiagnostics> classify_states(
    const Spectrum& s, const ModelParams& params,
    double im_threshold = kDefaultImThreshold);

}  // namespace nrmm
