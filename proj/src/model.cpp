#include "nrmm/model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nrmm {

Rational::Rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("Rational: zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  num = g ? p / g : p;
  den = g ? q / g : q;
}

Rational fibonacci_alpha(int level) {
  if (level < 2)
    throw std::invalid_argument("fibonacci_alpha: level must be >= 2");
  std::int64_t a = 1, b = 1;  // F_1, F_2
  for (int k = 2; k <= level; ++k) {
    if (b > std::numeric_limits<std::int64_t>::max() - a)
      throw std::overflow_error("fibonacci_alpha: 64-bit overflow at level " +
                                std::to_string(k));
    const std::int64_t next = a + b;
    a = b;
    b = next;
  }
  return Rational{a, b};  // (F_level, F_{level+1}), coprime
}

void validate(const ModelParams& params) {
  if (params.alpha.den % 2 == 0)
    throw std::invalid_argument(
        "ModelParams: alpha denominator must be odd (tan(pi*alpha*n) hits a "
        "pole for even q)");
  if (params.L < 3)
    throw std::invalid_argument("ModelParams: L must be >= 3");
  if (params.J == 0.0)
    throw std::invalid_argument("ModelParams: J must be nonzero");
  if (!std::isfinite(params.J) || !std::isfinite(params.V) ||
      !std::isfinite(params.gamma) || !std::isfinite(params.theta))
    throw std::invalid_argument("ModelParams: non-finite parameter");
}

double onsite_potential(int site, const ModelParams& params) {
  if (site < 1) throw std::invalid_argument("onsite_potential: site must be >= 1");
  const std::int64_t p = params.alpha.num;
  const std::int64_t q = params.alpha.den;
  // Reduce p*n mod q exactly; 128-bit intermediate keeps large p safe.
  using i128 = __int128;
  i128 r = (i128(p) * i128(site)) % q;
  if (r < 0) r += q;
  // Symmetric reduction to (-q/2, q/2] keeps the tan argument small.
  if (2 * r > q) r -= q;
  const double angle = M_PI * static_cast<double>(static_cast<std::int64_t>(r)) /
                       static_cast<double>(q);
  return params.V * std::tan(angle);
}

Matrix build_hamiltonian(const ModelParams& params) {
  validate(params);
  const int L = params.L;
  const Complex forward =
      params.J * std::exp(Complex(-params.gamma, -params.theta / L));
  const Complex backward =
      params.J * std::exp(Complex(params.gamma, params.theta / L));

  Matrix H = Matrix::Zero(L, L);
  for (int n = 1; n <= L; ++n) H(n - 1, n - 1) = onsite_potential(n, params);
  for (int n = 0; n + 1 < L; ++n) {
    H(n, n + 1) = forward;
    H(n + 1, n) = backward;
  }
  H(L - 1, 0) = forward;   // site L -> L+1 == 1
  H(0, L - 1) = backward;
  return H;
}

double inf_norm(const Matrix& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace nrmm
