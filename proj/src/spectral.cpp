#include "nrmm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace nrmm {

namespace {

// Golden-section minimization of f over [a, b] down to beta_tol.
template <typename F>
double golden_min(F f, double a, double b, double beta_tol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > beta_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

}  // namespace

Spectrum eigendecompose(const Matrix& H, bool want_vectors) {
  if (H.rows() != H.cols())
    throw std::invalid_argument("eigendecompose: matrix not square");
  if (!H.allFinite())
    throw std::invalid_argument("eigendecompose: non-finite entries");
  const lapack_int n = static_cast<lapack_int>(H.rows());

  Matrix a = H;  // zgeev overwrites its input
  Vector w(n);
  Matrix vr;
  if (want_vectors) vr.resize(n, n);

  // zgeev balances, reduces to Hessenberg form and runs shifted QR with
  // deflation; eigenvectors come from the triangular Schur factor.
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, a.data(), n,
      w.data(), nullptr, 1, want_vectors ? vr.data() : nullptr,
      want_vectors ? n : 1);
  if (info < 0)
    throw EigensolveError("eigendecompose: illegal argument to zgeev");
  if (info > 0)
    throw EigensolveError(
        "eigendecompose: QR iteration failed to converge at index " +
            std::to_string(info),
        static_cast<int>(info));

  // Deterministic (Re, Im) ordering.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    if (w(i).real() != w(j).real()) return w(i).real() < w(j).real();
    return w(i).imag() < w(j).imag();
  });

  Spectrum s;
  s.eigenvalues.resize(n);
  for (lapack_int i = 0; i < n; ++i) s.eigenvalues(i) = w(order[i]);

  if (want_vectors) {
    Matrix sorted(n, n);
    for (lapack_int i = 0; i < n; ++i)
      sorted.col(i) = vr.col(order[i]).normalized();
    s.residuals.resize(n);
    const double bound = kEigResidualTol * inf_norm(H);
    for (lapack_int i = 0; i < n; ++i) {
      s.residuals[i] =
          (H * sorted.col(i) - s.eigenvalues(i) * sorted.col(i)).norm();
      if (s.residuals[i] > bound)
        throw EigensolveError(
            "eigendecompose: residual contract violated at index " +
                std::to_string(i),
            static_cast<int>(i));
    }
    s.right_vectors = std::move(sorted);
  }
  return s;
}

double max_abs_imag(const Spectrum& s) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    m = std::max(m, std::abs(s.eigenvalues(i).imag()));
  return m;
}

double complex_dos(const Spectrum& s, double im_threshold) {
  if (!(im_threshold > 0.0))
    throw std::invalid_argument("complex_dos: threshold must be positive");
  const Eigen::Index n = s.eigenvalues.size();
  if (n == 0) return 0.0;
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(s.eigenvalues(i).imag()) > im_threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(n);
}

LoopPoint analytic_loop(double J, double V, double gamma, double beta) {
  const Complex core =
      2.0 * J *
      Complex(std::cos(beta) * std::cosh(gamma), std::sin(beta) * std::sinh(gamma));
  return LoopPoint{beta, core + Complex(0.0, V), core - Complex(0.0, V)};
}

double critical_gamma(double J, double V) {
  if (J == 0.0) throw std::invalid_argument("critical_gamma: J must be nonzero");
  return std::asinh(std::abs(V) / (2.0 * std::abs(J)));
}

LoopMatch loop_match(Complex energy, double J, double V, double gamma,
                     int n_beta) {
  if (n_beta < 8) throw std::invalid_argument("loop_match: n_beta too small");
  const auto branch_dist = [&](LoopBranch br) {
    return [&, br](double beta) {
      const LoopPoint p = analytic_loop(J, V, gamma, beta);
      return std::abs(energy - (br == LoopBranch::plus ? p.e_plus : p.e_minus));
    };
  };

  LoopMatch best{std::numeric_limits<double>::infinity(), LoopBranch::plus, 0.0};
  const double step = 2.0 * M_PI / n_beta;
  for (LoopBranch br : {LoopBranch::plus, LoopBranch::minus}) {
    auto f = branch_dist(br);
    double best_beta = -M_PI;
    double best_d = f(best_beta);
    for (int k = 1; k < n_beta; ++k) {
      const double beta = -M_PI + k * step;
      const double d = f(beta);
      if (d < best_d) {
        best_d = d;
        best_beta = beta;
      }
    }
    const double refined =
        golden_min(f, best_beta - step, best_beta + step, 1e-12);
    const double d = std::min(best_d, refined);
    if (d < best.distance) best = LoopMatch{d, br, best_beta};
  }
  return best;
}

double distance_to_loop(Complex energy, double J, double V, double gamma,
                        int n_beta) {
  return loop_match(energy, J, V, gamma, n_beta).distance;
}

}  // namespace nrmm
