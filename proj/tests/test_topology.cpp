#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nrmm/model.hpp"
#include "nrmm/topology.hpp"
#include "support/oracles.hpp"

using namespace nrmm;

namespace {

ModelParams maryland(double J, double V, double gamma, int level, int L) {
  ModelParams p;
  p.J = J;
  p.V = V;
  p.gamma = gamma;
  p.alpha = fibonacci_alpha(level);
  p.L = L;
  p.theta = 0.0;
  return p;
}

}  // namespace

TEST_CASE("log_det identity and diagonal cases") {
  const LogDet id = log_det(Matrix::Identity(4, 4));
  CHECK(id.log_abs == 0.0);
  CHECK(id.phase == 0.0);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = Complex(0, 2);
  d(1, 1) = Complex(3, 0);
  const LogDet ld = log_det(d);
  CHECK(ld.log_abs == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(ld.phase == doctest::Approx(M_PI / 2).epsilon(1e-15));
}

TEST_CASE("log_det matches the cofactor-expansion oracle on random 5x5") {
  std::mt19937 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int draw = 0; draw < 10; ++draw) {
    Matrix m(5, 5);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) m(r, c) = Complex(g(rng), g(rng));
    const auto det = oracles::cofactor_det(oracles::to_long_double(m));
    const LogDet ld = log_det(m);
    CHECK(ld.log_abs ==
          doctest::Approx(static_cast<double>(std::log(std::abs(det)))).epsilon(1e-10));
    const double phase_diff =
        std::remainder(ld.phase - static_cast<double>(std::arg(det)), 2.0 * M_PI);
    CHECK(std::abs(phase_diff) < 1e-10);
  }
}

TEST_CASE("log_det rejects singular and non-square input") {
  Matrix z = Matrix::Zero(3, 3);
  z(0, 0) = Complex(1, 0);
  z(2, 2) = Complex(3, 0);
  CHECK_THROWS_AS(log_det(z), SingularMatrixError);
  CHECK_THROWS_AS(log_det(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("winding numbers across the phase diagram at L=144") {
  // Incommensurate L keeps det[H(theta)] well conditioned in the
  // localized phase (commensurate rings pin an eigenvalue at E=0).
  const auto w_at = [](double v, double gamma) {
    return winding_number(maryland(1, v, gamma, 13, 144), Complex(0, 0), 64).w;
  };
  CHECK(w_at(1.0, 0.0) == 0);   // Hermitian
  CHECK(w_at(1.0, 0.2) == 0);   // localized
  CHECK(w_at(1.0, 1.0) == 1);   // mobility edge, sign convention
  CHECK(w_at(1.0, -1.0) == -1);
  CHECK(w_at(0.5, 0.3) == 1);   // |2 sinh 0.3| > 0.5
}

TEST_CASE("winding trace invariants") {
  const auto p = maryland(1, 1, 0.9, 13, 144);
  const WindingResult r = winding_number(p, Complex(0, 0), 64);
  CHECK(r.w == 1);
  REQUIRE(r.theta_grid.size() == r.phase_trace.size());
  REQUIRE(r.theta_grid.size() >= 65);
  CHECK(r.theta_grid.front() == 0.0);
  CHECK(r.theta_grid.back() == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  const double turns = (r.phase_trace.back() - r.phase_trace.front()) / (2.0 * M_PI);
  CHECK(std::abs(turns - r.w) < 1e-6);
  for (std::size_t i = 0; i + 1 < r.phase_trace.size(); ++i)
    CHECK(std::abs(r.phase_trace[i + 1] - r.phase_trace[i]) < M_PI / 2);
}

TEST_CASE("winding antisymmetry in gamma") {
  for (double gamma : {0.3, 0.8}) {
    const int plus = winding_number(maryland(1, 1, gamma, 13, 144), 0.0, 64).w;
    const int minus = winding_number(maryland(1, 1, -gamma, 13, 144), 0.0, 64).w;
    CHECK(plus == -minus);
  }
}

TEST_CASE("winding is independent of the grid resolution") {
  for (auto [v, gamma] : {std::pair{1.0, 0.8}, {1.5, 0.3}, {0.7, 1.2}}) {
    const auto p = maryland(1, v, gamma, 13, 144);
    const int w64 = winding_number(p, 0.0, 64).w;
    const int w128 = winding_number(p, 0.0, 128).w;
    const int w256 = winding_number(p, 0.0, 256).w;
    CHECK(w64 == w128);
    CHECK(w128 == w256);
  }
}

TEST_CASE("winding rejects tiny grids and flags singular base energies") {
  const auto p = maryland(1, 1, 0.9, 13, 144);
  CHECK_THROWS_AS(winding_number(p, 0.0, 32), std::invalid_argument);

  // V=0, gamma=0, L=4: the plain ring has an exact eigenvalue pair at 0
  // and an exactly singular determinant at theta=0.
  ModelParams ring;
  ring.J = 1.0;
  ring.V = 0.0;
  ring.gamma = 0.0;
  ring.alpha = Rational{1, 3};
  ring.L = 4;
  CHECK_THROWS_AS(winding_number(ring, Complex(0, 0), 64), WindingError);
}

TEST_CASE("winding away from the spectrum of the plain ring") {
  // Same ring, base energy outside the spectrum: no singularity, w = 0.
  ModelParams ring;
  ring.J = 1.0;
  ring.V = 0.0;
  ring.gamma = 0.0;
  ring.alpha = Rational{1, 3};
  ring.L = 4;
  CHECK(winding_number(ring, Complex(3.0, 0.0), 64).w == 0);
}
