// Copyright 2026 The finiteq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <iostream>
#include <vector>

#include "finiteq/discrete.hpp"
#include "helpers.hpp"

using namespace finiteq;
using finiteq::testing::random_state;
using Cx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid validation and defaults") {
  CHECK_THROWS_AS(Grid<double>(0.0, -1.0, 4), validation_error);
  CHECK_THROWS_AS(Grid<double>(0.0, 1.0, 3), validation_error);
  const auto grid = Grid<double>::default_for(4);
  CHECK(grid.num_points == 16);
  CHECK(grid.dx == doctest::Approx(0.25));
  CHECK(grid.point(4) == doctest::Approx(1.0));
}

TEST_CASE("discretize_wavefunction normalizes and reports the raw norm") {
  VectorC<double> constant = VectorC<double>::Ones(4);
  const auto uniform = discretize_wavefunction(constant, Grid<double>(0.0, 1.0, 4));
  for (int j = 0; j < 4; ++j) CHECK(uniform.state.amplitude(j).real() == doctest::Approx(0.5));
  CHECK(uniform.raw_norm == doctest::Approx(4.0));

  VectorC<double> delta = VectorC<double>::Zero(4);
  delta[0] = 1.0;
  const auto localized = discretize_wavefunction(delta, Grid<double>(0.0, 0.5, 4));
  CHECK(localized.state.amplitude(0).real() == doctest::Approx(1.0));
  CHECK(localized.raw_norm == doctest::Approx(0.5));

  CHECK_THROWS_AS(discretize_wavefunction(VectorC<double>::Zero(4).eval(), Grid<double>(0.0, 1.0, 4)),
                  validation_error);
  CHECK_THROWS_AS(discretize_wavefunction(VectorC<double>::Ones(3).eval(), Grid<double>(0.0, 1.0, 4)),
                  validation_error);
}

TEST_CASE("gaussian raw norm approaches the continuum integral") {
  // |psi|^2 = exp(-(x-8)^2) integrates to sqrt(pi); the Riemann sum at
  // dx = 1/16 is exponentially close. Oracle: high-resolution quadrature.
  const Grid<double> grid(0.0, 16.0 / 256.0, 256);
  VectorC<double> samples(256);
  for (int j = 0; j < 256; ++j) {
    const double x = grid.point(j);
    samples[j] = std::exp(-(x - 8.0) * (x - 8.0) / 2.0);
  }
  const auto result = discretize_wavefunction(samples, grid);

  double quadrature = 0.0;
  const int fine = 1 << 20;
  const double fine_dx = 16.0 / fine;
  for (int j = 0; j < fine; ++j) {
    const double x = (j + 0.5) * fine_dx;
    quadrature += std::exp(-(x - 8.0) * (x - 8.0)) * fine_dx;
  }
  CHECK(std::abs(quadrature - std::sqrt(kPi)) < 1e-9);
  CHECK(std::abs(result.raw_norm - std::sqrt(kPi)) < 1e-6);
}

TEST_CASE("qft single qubit and hidden period examples") {
  const auto from_zero = qft(PureState<double>::basis(1, 0), FourierDirection::forward);
  CHECK(from_zero.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(from_zero.amplitude(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto from_one = qft(PureState<double>::basis(1, 1), FourierDirection::forward);
  CHECK(from_one.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(from_one.amplitude(1).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));

  // period-2 comb on n=2 maps to itself; oracle is the explicit 4x4 multiply
  VectorC<double> comb(4);
  comb << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), 0.0;
  const PureState<double> comb_state(2, comb);
  const auto transformed = qft(comb_state, FourierDirection::forward);
  const VectorC<double> oracle = qft_matrix<double>(2, FourierDirection::forward) * comb;
  CHECK((transformed.amplitudes() - oracle).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((transformed.amplitudes() - comb).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("qft is unitary and inverse really inverts") {
  for (int n = 1; n <= 8; ++n) {
    const auto dim = static_cast<Eigen::Index>(1) << n;
    const auto forward = qft_matrix<double>(n, FourierDirection::forward);
    CHECK((forward * forward.adjoint() - MatrixC<double>::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
    const auto inverse = qft_matrix<double>(n, FourierDirection::inverse);
    CHECK((forward * inverse - MatrixC<double>::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SplitMix64 rng(17);
  for (int n = 1; n <= 8; ++n) {
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto state = random_state(n, rng);
      const auto round_trip = qft(qft(state, FourierDirection::forward), FourierDirection::inverse);
      worst = std::max(worst, (round_trip.amplitudes() - state.amplitudes()).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("hidden period combs land on multiples of N over r") {
  for (int n = 1; n <= 6; ++n) {
    const std::uint64_t dim = 1ull << n;
    for (std::uint64_t r = 1; r <= dim; r *= 2) {
      for (std::uint64_t offset = 0; offset < r; ++offset) {
        VectorC<double> comb = VectorC<double>::Zero(static_cast<Eigen::Index>(dim));
        const double amp = std::sqrt(static_cast<double>(r) / static_cast<double>(dim));
        for (std::uint64_t j = offset; j < dim; j += r) comb[static_cast<Eigen::Index>(j)] = amp;
        const auto image = qft(PureState<double>(n, comb), FourierDirection::forward);
        const std::uint64_t stride = dim / r;
        for (std::uint64_t a = 0; a < dim; ++a) {
          if (a % stride != 0) CHECK(std::abs(image.amplitude(a)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("position operator is the coordinate diagonal") {
  const auto pos1 = position_operator<double>(1);
  CHECK(pos1.matrix()(0, 0).real() == doctest::Approx(0.0));
  CHECK(pos1.matrix()(1, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

  const auto pos2 = position_operator<double>(2);
  CHECK(pos2.matrix()(1, 1).real() == doctest::Approx(0.5));
  CHECK(pos2.matrix()(2, 2).real() == doctest::Approx(1.0));
  CHECK(pos2.matrix()(3, 3).real() == doctest::Approx(1.5));

  for (const int n : {1, 2, 3, 6}) {
    const double dim = static_cast<double>(1 << n);
    const auto trace = position_operator<double>(n).matrix().trace().real();
    CHECK(trace == doctest::Approx((dim - 1.0) * dim / (2.0 * std::sqrt(dim))));
  }
  CHECK_THROWS_AS(position_operator<double>(11), guard_error);
}

TEST_CASE("momentum operator: matrix, spectrum, eigenvectors") {
  // n=1: every entry is -1/(2 sqrt(2)); oracle by direct 2x2 diagonalization
  const auto p1 = momentum_operator<double>(1);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(p1.matrix()(r, c).real() == doctest::Approx(-1.0 / (2.0 * std::sqrt(2.0))));
      CHECK(p1.matrix()(r, c).imag() == doctest::Approx(0.0));
    }
  }
  Eigen::SelfAdjointEigenSolver<MatrixC<double>> small(p1.matrix());
  CHECK(small.eigenvalues()[0] == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(small.eigenvalues()[1] == doctest::Approx(0.0));

  // spectrum for n=2 pinned by the closed form
  Eigen::SelfAdjointEigenSolver<MatrixC<double>> four(momentum_operator<double>(2).matrix());
  const std::vector<double> expected2{-1.0, -0.5, 0.0, 0.5};
  for (int k = 0; k < 4; ++k) CHECK(four.eigenvalues()[k] == doctest::Approx(expected2[static_cast<std::size_t>(k)]));

  for (int n = 1; n <= 6; ++n) {
    const auto op = momentum_operator<double>(n);
    const auto dim = static_cast<Eigen::Index>(1) << n;
    const double sqrt_n = std::sqrt(static_cast<double>(dim));
    CHECK((op.matrix() - op.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-10);

    Eigen::SelfAdjointEigenSolver<MatrixC<double>> solver(op.matrix());
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double expected = sqrt_n * (static_cast<double>(c) / static_cast<double>(dim) - 0.5);
      CHECK(std::abs(solver.eigenvalues()[c] - expected) < 1e-8);
    }

    // plane waves QFT^-1 |a> are eigenvectors; matrix-vector oracle
    for (Eigen::Index a = 0; a < dim; ++a) {
      const auto wave = qft(PureState<double>::basis(n, static_cast<std::uint64_t>(a)), FourierDirection::inverse);
      const double eigenvalue = sqrt_n * (static_cast<double>(a) / static_cast<double>(dim) - 0.5);
      const VectorC<double> applied = op.matrix() * wave.amplitudes();
      CHECK((applied - eigenvalue * wave.amplitudes()).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  CHECK_THROWS_AS(momentum_operator<double>(11), guard_error);
}

TEST_CASE("phase diagonal alternates sign and squares to identity") {
  const auto d1 = phase_diagonal<double>(1);
  CHECK(d1[0] == Cx(1.0, 0.0));
  CHECK(d1[1] == Cx(-1.0, 0.0));
  const auto d2 = phase_diagonal<double>(2);
  CHECK(d2[0] == Cx(1.0, 0.0));
  CHECK(d2[1] == Cx(-1.0, 0.0));
  CHECK(d2[2] == Cx(1.0, 0.0));
  CHECK(d2[3] == Cx(-1.0, 0.0));
  for (Eigen::Index j = 0; j < 4; ++j) CHECK((d2[j] * d2[j]).real() == doctest::Approx(1.0));
}

TEST_CASE("momentum alternate form residual is reported, deterministic, nonnegative") {
  const double r1 = momentum_alternate_form_residual<double>(1);
  const double r2 = momentum_alternate_form_residual<double>(2);
  CHECK(r1 >= 0.0);
  CHECK(r2 >= 0.0);
  CHECK(momentum_alternate_form_residual<double>(1) == r1);
  CHECK(momentum_alternate_form_residual<double>(2) == r2);
  // The two forms differ by the mod-N wrap of the spectrum shift, so the
  // residual is genuinely nonzero.
  CHECK(r1 > 0.1);
  MESSAGE("alternate-form residual n=1: ", r1, ", n=2: ", r2);
  CHECK_THROWS_AS(momentum_alternate_form_residual<double>(9), guard_error);
}

TEST_CASE("index fraction operator feeds the momentum construction") {
  const int n = 3;
  const auto dim = static_cast<Eigen::Index>(1) << n;
  const auto fraction = index_fraction_operator<double>(n);
  const double sqrt_n = std::sqrt(static_cast<double>(dim));
  const auto forward = qft_matrix<double>(n, FourierDirection::forward);
  const auto inverse = qft_matrix<double>(n, FourierDirection::inverse);
  const MatrixC<double> rebuilt =
      inverse * (sqrt_n * (fraction.matrix() - 0.5 * MatrixC<double>::Identity(dim, dim))) * forward;
  CHECK((rebuilt - momentum_operator<double>(n).matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("soft canonical pair check on a momentum-centered gaussian") {
  // x and p have grain 1/sqrt(N) each, so dx dp = 1/N: the grids realize
  // h = 1 and the commutator expectation approaches i h / (2 pi). The
  // wavepacket needs the (-1)^j carrier so its spectral weight sits at the
  // center of the momentum band, away from the wrap.
  const int n = 8;
  const auto dim = static_cast<Eigen::Index>(1) << n;
  const Grid<double> grid = Grid<double>::default_for(n);
  VectorC<double> samples(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double x = grid.point(static_cast<std::uint64_t>(j));
    const double envelope = std::exp(-(x - 8.0) * (x - 8.0) / 2.0);
    samples[j] = (j % 2 == 0 ? 1.0 : -1.0) * envelope;
  }
  const auto packet = discretize_wavefunction(samples, grid).state;

  const auto x_op = position_operator<double>(n).matrix();
  const auto p_op = momentum_operator<double>(n).matrix();
  const VectorC<double> commutator_applied =
      x_op * (p_op * packet.amplitudes()) - p_op * (x_op * packet.amplitudes());
  const Cx value = packet.amplitudes().dot(commutator_applied);
  MESSAGE("<[X,P]> = ", value.real(), " + ", value.imag(), "i  (i/(2 pi) = ", 1.0 / (2.0 * kPi), "i)");
  // reduced Planck constant for these grids is 1/(2 pi)
  CHECK(std::abs(2.0 * kPi * value - Cx(0.0, 1.0)) < 5e-2);
}
