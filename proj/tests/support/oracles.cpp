#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

namespace {
const long double kPiLd = 3.14159265358979323846264338327950288L;
}

MatLd to_long_double(const nrmm::Matrix& m) {
  MatLd out(static_cast<std::size_t>(m.rows()),
            std::vector<CxLd>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          CxLd(m(i, j).real(), m(i, j).imag());
  return out;
}

CxLd elimination_det(MatLd m) {
  const std::size_t n = m.size();
  CxLd det(1.0L, 0.0L);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == CxLd(0.0L, 0.0L)) return CxLd(0.0L, 0.0L);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const CxLd factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

CxLd cofactor_det(const MatLd& m) {
  const std::size_t n = m.size();
  if (n > 8) throw std::invalid_argument("cofactor_det: matrix too large");
  if (n == 1) return m[0][0];
  CxLd sum(0.0L, 0.0L);
  long double sign = 1.0L;
  for (std::size_t k = 0; k < n; ++k) {
    MatLd minor(n - 1, std::vector<CxLd>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == k) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    sum += sign * m[0][k] * cofactor_det(minor);
    sign = -sign;
  }
  return sum;
}

std::vector<CxLd> char_poly(const nrmm::Matrix& m) {
  const std::size_t n = static_cast<std::size_t>(m.rows());
  const MatLd base = to_long_double(m);
  // Sampling radius: Cauchy-style bound on the eigenvalue moduli.
  const long double radius = char_poly_radius(m);

  // Work with the scaled polynomial q(y) = det(y R I - A) / R^n so the
  // roots sit inside the unit disk; the monomial basis stays well
  // conditioned there. q(y_k) at the n+1 roots of unity, coefficients by
  // inverse DFT, roots rescaled by R afterwards (see eigenvalue_oracle).
  const std::size_t points = n + 1;
  std::vector<CxLd> values(points);
  for (std::size_t k = 0; k < points; ++k) {
    const long double angle = 2.0L * kPiLd * static_cast<long double>(k) /
                              static_cast<long double>(points);
    const CxLd x = radius * CxLd(std::cos(angle), std::sin(angle));
    MatLd shifted = base;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) shifted[i][j] = -shifted[i][j];
      shifted[i][i] += x;
    }
    values[k] = elimination_det(shifted);
  }

  const long double scale = std::pow(radius, static_cast<long double>(n));
  std::vector<CxLd> coeffs(points);
  for (std::size_t j = 0; j < points; ++j) {
    CxLd acc(0.0L, 0.0L);
    for (std::size_t k = 0; k < points; ++k) {
      const long double angle =
          -2.0L * kPiLd *
          static_cast<long double>((j * k) % points) /
          static_cast<long double>(points);
      acc += values[k] * CxLd(std::cos(angle), std::sin(angle));
    }
    acc /= static_cast<long double>(points);
    coeffs[j] = acc / scale;
  }
  coeffs[n] = CxLd(1.0L, 0.0L);  // monic by construction
  return coeffs;
}

long double char_poly_radius(const nrmm::Matrix& m) {
  const std::size_t n = static_cast<std::size_t>(m.rows());
  long double radius = 1.0L;
  for (std::size_t i = 0; i < n; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < n; ++j)
      row += std::abs(CxLd(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real(),
                           m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).imag()));
    radius = std::max(radius, row);
  }
  return radius * 1.25L;
}

std::vector<CxLd> durand_kerner(const std::vector<CxLd>& coeffs, int max_iter) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  long double radius = 0.0L;
  for (std::size_t j = 0; j < n; ++j) radius = std::max(radius, std::abs(coeffs[j]));
  radius = 1.0L + radius;

  const auto eval = [&](CxLd x) {
    CxLd acc = coeffs[n];
    for (std::size_t j = n; j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
  };

  std::vector<CxLd> roots(n);
  const CxLd seed(0.4L, 0.9L);  // non-real seed avoids symmetric stagnation
  CxLd w(1.0L, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    w *= seed;
    roots[i] = radius * w / std::abs(w);
    roots[i] *= (0.3L + 0.7L * static_cast<long double>(i + 1) /
                            static_cast<long double>(n));
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    long double worst = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      CxLd denom(1.0L, 0.0L);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == CxLd(0.0L, 0.0L)) {
        roots[i] += CxLd(1e-10L, 1e-10L);
        continue;
      }
      const CxLd delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      worst = std::max(worst, std::abs(delta) / std::max(1.0L, std::abs(roots[i])));
    }
    if (worst < 1e-17L) break;
  }
  return roots;
}

std::vector<std::complex<double>> eigenvalue_oracle(const nrmm::Matrix& m) {
  const auto coeffs = char_poly(m);
  const long double radius = char_poly_radius(m);
  auto roots = durand_kerner(coeffs);

  // Newton polish on the scaled polynomial.
  const std::size_t n = coeffs.size() - 1;
  for (CxLd& r : roots) {
    for (int step = 0; step < 4; ++step) {
      CxLd p = coeffs[n], dp(0.0L, 0.0L);
      for (std::size_t j = n; j-- > 0;) {
        dp = dp * r + p;
        p = p * r + coeffs[j];
      }
      if (dp == CxLd(0.0L, 0.0L)) break;
      r -= p / dp;
    }
  }

  std::vector<std::complex<double>> out;
  out.reserve(roots.size());
  for (const CxLd& r : roots)
    out.emplace_back(static_cast<double>(r.real() * radius),
                     static_cast<double>(r.imag() * radius));
  return out;
}

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest-augmenting-path formulation with row/column potentials;
  // 1-based sentinel indexing.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    std::vector<double> min_slack(n + 1, inf);
    std::vector<int> prev(n + 1, 0);
    std::vector<bool> used(n + 1, false);
    int j0 = 0;
    match[0] = i;
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double slack = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (slack < min_slack[j]) {
          min_slack[j] = slack;
          prev[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = prev[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

double max_matched_distance(const std::vector<std::complex<double>>& a,
                            const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("max_matched_distance: size mismatch");
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<double>> cost(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          std::abs(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(j)]);
  const auto assign = hungarian(cost);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    worst = std::max(worst, cost[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])]);
  return worst;
}

long double tan_pi_rational(std::int64_t p, std::int64_t q, std::int64_t n) {
  using i128 = __int128;
  i128 r = (i128(p) * i128(n)) % q;
  if (r < 0) r += q;
  if (2 * r > q) r -= q;
  const long double angle =
      kPiLd * static_cast<long double>(static_cast<std::int64_t>(r)) /
      static_cast<long double>(q);
  return std::tan(angle);
}

long double loop_distance_ld(std::complex<double> energy, double J, double V,
                             double gamma, int n_beta) {
  const CxLd e(energy.real(), energy.imag());
  const long double j2 = 2.0L * static_cast<long double>(J);
  const long double ch = std::cosh(static_cast<long double>(gamma));
  const long double sh = std::sinh(static_cast<long double>(gamma));
  long double best = std::numeric_limits<long double>::infinity();
  for (int k = 0; k < n_beta; ++k) {
    const long double beta =
        -kPiLd + 2.0L * kPiLd * static_cast<long double>(k) /
                     static_cast<long double>(n_beta);
    const CxLd core(j2 * std::cos(beta) * ch, j2 * std::sin(beta) * sh);
    best = std::min(best, std::abs(e - (core + CxLd(0.0L, V))));
    best = std::min(best, std::abs(e - (core - CxLd(0.0L, V))));
  }
  return best;
}

}  // namespace oracles
