#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nrmm/model.hpp"

namespace nrmm {

/// Relative residual bound every returned eigenpair satisfies:
/// ||H psi - E psi|| <= kEigResidualTol * ||H||_inf.
inline constexpr double kEigResidualTol = 1e-10;

/// Default cutoff above which |Im E| counts as complex.
inline constexpr double kDefaultImThreshold = 1e-5;

struct EigensolveError : std::runtime_error {
  explicit EigensolveError(const std::string& what, int index = -1)
      : std::runtime_error(what), unconverged_index(index) {}
  int unconverged_index;
};

/// Full eigendecomposition result. Eigenvalues sorted by (Re, Im);
/// column i of right_vectors pairs with eigenvalue i and has unit
/// Euclidean norm. residuals[i] = ||H psi_i - E_i psi_i||_2, present
/// only when vectors were requested.
struct Spectrum {
  Vector eigenvalues;
  std::optional<Matrix> right_vectors;
  std::vector<double> residuals;
};

Spectrum eigendecompose(const Matrix& H, bool want_vectors);

/// max_i |Im E_i|.
double max_abs_imag(const Spectrum& s);

/// Fraction of eigenvalues with |Im E| > im_threshold.
double complex_dos(const Spectrum& s, double im_threshold = kDefaultImThreshold);

/// One point of the closed-form dispersion loop
/// E_{+-} = 2J cos(beta - i gamma) +- iV.
struct LoopPoint {
  double beta;
  Complex e_plus;
  Complex e_minus;
};

LoopPoint analytic_loop(double J, double V, double gamma, double beta);

/// arcsinh(|V| / (2|J|)); the spectrum is real iff |gamma| is below this.
/// Throws std::invalid_argument for J == 0.
double critical_gamma(double J, double V);

enum class LoopBranch { plus, minus };

struct LoopMatch {
  double distance;
  LoopBranch branch;
  double beta;
};

/// Nearest point on either loop branch: dense sampling over n_beta points
/// followed by golden-section refinement to 1e-12 in beta.
LoopMatch loop_match(Complex energy, double J, double V, double gamma,
                     int n_beta = 4096);

/// min over beta and both branches of |E - E_{+-}(beta)|.
double distance_to_loop(Complex energy, double J, double V, double gamma,
                        int n_beta = 4096);

}  // namespace nrmm
