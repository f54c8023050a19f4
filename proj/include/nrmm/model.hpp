#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace nrmm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Exact rational p/q, stored coprime with q > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t p, std::int64_t q);

  bool operator==(const Rational&) const = default;
};

/// Adjacent-Fibonacci approximant F_level / F_{level+1} of the inverse
/// golden ratio (convention F_1 = F_2 = 1). Throws std::overflow_error
/// once the 64-bit representation would overflow (level > 91) and
/// std::invalid_argument for level < 2.
Rational fibonacci_alpha(int level);

/// One model instance: nearest-neighbor chain of length L under PBC with
/// hopping J e^{-gamma - i theta/L} (right) / J e^{+gamma + i theta/L}
/// (left) and onsite potential V tan(pi alpha n).
struct ModelParams {
  double J = 1.0;
  double V = 1.0;
  double gamma = 0.0;
  Rational alpha{233, 377};
  int L = 377;
  double theta = 0.0;

  /// True when L is an integer multiple of q, i.e. the potential closes
  /// periodically around the ring.
  bool commensurate() const { return alpha.den > 0 && L % alpha.den == 0; }
};

/// Throws std::invalid_argument on any violated precondition:
/// even q (tan would hit a pole), L < 3, J == 0, non-finite fields.
void validate(const ModelParams& params);

/// V tan(pi alpha n) with the angle reduced mod pi in exact integer
/// arithmetic before evaluating tan. Site index n is 1-based.
double onsite_potential(int site, const ModelParams& params);

/// Dense L x L Hamiltonian. Entry [n, n+1] = J e^{-gamma - i theta/L},
/// [n+1, n] = J e^{+gamma + i theta/L}, PBC wrap [L,1]/[1,L] likewise,
/// diagonal [n, n] = onsite_potential(n).
Matrix build_hamiltonian(const ModelParams& params);

/// Max absolute row sum.
double inf_norm(const Matrix& m);

}  // namespace nrmm
