#include "nrmm/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nrmm/spectral.hpp"

namespace nrmm {

namespace {

Complex mobius_numerator(Complex z) { return Complex(1.0, 0.0) - Complex(0.0, 1.0) * z; }
Complex mobius_denominator(Complex z) { return Complex(1.0, 0.0) + Complex(0.0, 1.0) * z; }

// z(x) = (2/V) cos(x - i gamma) - E/V, the arctan argument.
Complex kick_argument(double x, Complex energy, double V, double gamma) {
  if (V == 0.0) throw std::invalid_argument("kick: V must be nonzero");
  return (2.0 / V) * std::cos(Complex(x, -gamma)) - energy / V;
}

}  // namespace

RatioCheck eigenpair_ratio_check(Complex energy, const Vector& psi,
                                 const ModelParams& params,
                                 double denominator_floor) {
  validate(params);
  const int L = params.L;
  if (psi.size() != L)
    throw std::invalid_argument("eigenpair_ratio_check: psi length != L");
  const double norm = psi.norm();
  if (norm == 0.0)
    throw std::invalid_argument("eigenpair_ratio_check: zero vector");

  // Divide J out; the rearrangement is stated in units where J = 1.
  const Complex energy_scaled = energy / params.J;
  const double v_scaled = params.V / params.J;
  const Complex hop_fwd = std::exp(Complex(-params.gamma, -params.theta / L));
  const Complex hop_bwd = std::exp(Complex(params.gamma, params.theta / L));
  const double floor = denominator_floor * norm;

  RatioCheck out{0.0, 0, 0};
  for (int n = 1; n <= L; ++n) {
    const Complex here = psi(n - 1);
    const Complex right = psi(n % L);
    const Complex left = psi((n - 2 + L) % L);
    const Complex x = energy_scaled * here - hop_fwd * right - hop_bwd * left;
    const Complex num = v_scaled * here - Complex(0.0, 1.0) * x;
    const Complex den = v_scaled * here + Complex(0.0, 1.0) * x;
    if (std::abs(den) < floor) {
      ++out.unverifiable_sites;
      continue;
    }
    // Exact reduction of -2 pi alpha n mod 2 pi.
    using i128 = __int128;
    const std::int64_t q = params.alpha.den;
    i128 r = (i128(params.alpha.num) * i128(n)) % q;
    if (r < 0) r += q;
    const double angle =
        -2.0 * M_PI * static_cast<double>(static_cast<std::int64_t>(r)) /
        static_cast<double>(q);
    const Complex target = std::polar(1.0, angle);
    out.max_residual = std::max(out.max_residual, std::abs(num / den - target));
    ++out.verifiable_sites;
  }
  return out;
}

Complex kick_function(double x, Complex energy, double V, double gamma) {
  return 2.0 * std::atan(kick_argument(x, energy, V, gamma));
}

double kick_identity_check(double x, Complex energy, double V, double gamma) {
  const Complex z = kick_argument(x, energy, V, gamma);
  const Complex den = mobius_denominator(z);
  if (std::abs(den) < 1e-12)
    throw KickPoleError("kick_identity_check: pole at x = " + std::to_string(x));
  const Complex k = 2.0 * std::atan(z);
  const Complex lhs = std::exp(Complex(0.0, -1.0) * k);
  return std::abs(lhs - mobius_numerator(z) / den);
}

Matrix ring_propagator(const ModelParams& params, Complex energy) {
  validate(params);
  const std::int64_t q64 = params.alpha.den;
  if (params.L != q64)
    throw std::invalid_argument(
        "ring_propagator: commensurate setup requires L == q");
  const int q = static_cast<int>(q64);
  const int p = static_cast<int>(((params.alpha.num % q64) + q64) % q64);

  // Kick factors on the position grid x_m = 2 pi m / q.
  std::vector<Complex> kick(static_cast<std::size_t>(q));
  for (int m = 0; m < q; ++m) {
    const double x = 2.0 * M_PI * m / q;
    const Complex z = kick_argument(x, energy / params.J, params.V / params.J,
                                    params.gamma);
    const Complex den = mobius_denominator(z);
    if (std::abs(den) < 1e-12)
      throw KickPoleError("ring_propagator: kick pole at grid point m = " +
                          std::to_string(m));
    kick[static_cast<std::size_t>(m)] = mobius_numerator(z) / den;  // e^{-iK(x_m)}
  }

  // Translation by 2 pi alpha moves the grid by exactly p points;
  // in momentum space it is the diagonal e^{-i 2 pi p n / q}.
  Matrix u = Matrix::Zero(q, q);
  for (int m = 0; m < q; ++m)
    u(m, ((m - p) % q + q) % q) = kick[static_cast<std::size_t>(m)];
  return u;
}

RingSpectrum ring_propagator_spectrum(const ModelParams& params, Complex energy) {
  const Matrix u = ring_propagator(params, energy);
  const Spectrum s = eigendecompose(u, false);
  RingSpectrum out;
  out.eigenphases.reserve(static_cast<std::size_t>(s.eigenvalues.size()));
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    out.eigenphases.push_back(std::arg(s.eigenvalues(i)));
  std::sort(out.eigenphases.begin(), out.eigenphases.end());
  out.min_abs_phase = std::numeric_limits<double>::infinity();
  for (const double ph : out.eigenphases)
    out.min_abs_phase = std::min(out.min_abs_phase, std::abs(ph));
  return out;
}

}  // namespace nrmm
