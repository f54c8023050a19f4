#include "nrmm/localization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nrmm {

double ipr(const Vector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("ipr: zero vector");
  double sum = 0.0;
  for (Eigen::Index n = 0; n < psi.size(); ++n) {
    const double p = std::norm(psi(n));
    sum += p * p;
  }
  if (std::abs(norm - 1.0) > 1e-12) sum /= (norm * norm) * (norm * norm);
  return sum;
}

IprSummary ipr_summary(const Spectrum& s) {
  if (!s.right_vectors)
    throw std::invalid_argument("ipr_summary: eigenvectors required");
  const Matrix& vecs = *s.right_vectors;
  IprSummary out{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (Eigen::Index i = 0; i < vecs.cols(); ++i) {
    const double v = ipr(vecs.col(i));
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
    out.mean += v;
  }
  out.mean /= static_cast<double>(vecs.cols());
  return out;
}

double ellipse_value(Complex energy, double J, double V, double gamma) {
  if (gamma == 0.0)
    throw std::invalid_argument(
        "ellipse_value: no mobility edge in the Hermitian limit (gamma = 0)");
  const double a = 2.0 * J * std::sinh(gamma);
  const double b = 2.0 * J * std::cosh(gamma);
  const double re = energy.real();
  return (V * V) / (a * a) + (re * re) / (b * b);
}

std::vector<StateDiagnostics> classify_states(const Spectrum& s,
                                              const ModelParams& params,
                                              double im_threshold) {
  if (!s.right_vectors)
    throw std::invalid_argument("classify_states: eigenvectors required");
  const Matrix& vecs = *s.right_vectors;
  std::vector<StateDiagnostics> out;
  out.reserve(static_cast<std::size_t>(s.eigenvalues.size()));
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const Complex energy = s.eigenvalues(i);
    StateDiagnostics d;
    d.energy = energy;
    d.ipr = ipr(vecs.col(i));
    d.ellipse_value = params.gamma == 0.0
                          ? std::numeric_limits<double>::infinity()
                          : ellipse_value(energy, params.J, params.V, params.gamma);
    d.label = std::abs(energy.imag()) > im_threshold ? StateLabel::extended
                                                     : StateLabel::localized;
    out.push_back(d);
  }
  return out;
}

}  // namespace nrmm
