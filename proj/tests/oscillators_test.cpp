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
#include <vector>

#include <Eigen/Eigenvalues>

#include "finiteq/oscillators.hpp"
#include "finiteq/rng.hpp"

using namespace finiteq;

namespace {
constexpr double kTau = 6.283185307179586476925286766559;
}

TEST_CASE("normal mode transform basics") {
  VectorR<double> impulse = VectorR<double>::Zero(8);
  impulse[0] = 1.0;
  const auto impulse_modes = normal_mode_transform(impulse, 1.0 / std::sqrt(8.0), kTau / 8.0);
  for (Eigen::Index k = 0; k < 8; ++k) {
    CHECK(impulse_modes[k].real() == doctest::Approx(1.0 / std::sqrt(8.0)));
    CHECK(impulse_modes[k].imag() == doctest::Approx(0.0));
  }

  VectorR<double> constant = VectorR<double>::Ones(16);
  const auto constant_modes = normal_mode_transform(constant);
  CHECK(constant_modes[0].real() == doctest::Approx(std::sqrt(16.0)));
  for (Eigen::Index k = 1; k < 16; ++k) CHECK(std::abs(constant_modes[k]) < 1e-12);

  VectorR<double> too_short(1);
  too_short << 1.0;
  CHECK_THROWS_AS(normal_mode_transform(too_short), validation_error);
}

TEST_CASE("non-default transform parameters are flagged non-unitary") {
  CHECK(normal_mode_transform_is_unitary(8, 1.0 / std::sqrt(8.0), kTau / 8.0));
  CHECK(!normal_mode_transform_is_unitary(8, 1.0, kTau / 8.0));
  CHECK(!normal_mode_transform_is_unitary(8, 1.0 / std::sqrt(8.0), 0.1));
}

TEST_CASE("default transform is unitary and inverts") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.uniform_below(30));
    VectorR<double> q(n);
    for (Eigen::Index l = 0; l < n; ++l) q[l] = rng.normal();
    const auto modes = normal_mode_transform(q);
    CHECK(std::abs(modes.norm() - q.norm()) < 1e-12);
    const auto back = normal_mode_inverse(modes);
    for (Eigen::Index l = 0; l < n; ++l) {
      CHECK(std::abs(back[l] - std::complex<double>(q[l], 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("oscillator chain validation") {
  MatrixR<double> asym(2, 2);
  asym << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(OscillatorChain<double>(2, asym), validation_error);
  CHECK_THROWS_AS(OscillatorChain<double>(1, MatrixR<double>::Identity(1, 1)), validation_error);

  const auto ring = OscillatorChain<double>::circulant({2.0, -1.0, 0.0, -1.0});
  CHECK(ring.is_circulant());
  CHECK(ring.coupling(1, 2) == doctest::Approx(-1.0));
  CHECK(ring.coupling(3, 0) == doctest::Approx(-1.0));
}

TEST_CASE("identity coupling decouples with unit frequencies") {
  const OscillatorChain<double> chain(4, MatrixR<double>::Identity(4, 4));
  const auto report = decouple(chain);
  CHECK(report.decoupled);
  CHECK(report.offdiag_residual < 1e-14);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(report.omega_squared[k] == doctest::Approx(1.0));
  CHECK(report.unstable_modes.empty());
}

TEST_CASE("ring chain frequencies follow the circulant formula") {
  const auto ring =
      OscillatorChain<double>::circulant({2.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0});
  const auto report = decouple(ring);
  CHECK(report.decoupled);
  CHECK(report.offdiag_residual < 1e-10);
  for (Eigen::Index k = 0; k < 8; ++k) {
    const double expected = 2.0 - 2.0 * std::cos(kTau * static_cast<double>(k) / 8.0);
    CHECK(std::abs(report.omega_squared[k] - expected) < 1e-10);
  }
  CHECK(report.unstable_modes.empty());
}

TEST_CASE("non-circulant couplings are rejected with guidance") {
  MatrixR<double> k(3, 3);
  k << 2.0, -1.0, 0.0,
       -1.0, 2.0, -1.0,
       0.0, -1.0, 2.0;  // open chain: symmetric but not circulant
  const OscillatorChain<double> chain(3, k);
  CHECK(!chain.is_circulant());
  CHECK_THROWS_WITH_AS(decouple(chain), doctest::Contains("eigensolver"), validation_error);
}

TEST_CASE("unstable modes are flagged") {
  // negative diagonal makes every mode frequency negative
  const auto inverted = OscillatorChain<double>::circulant({-1.0, 0.0, 0.0, 0.0});
  const auto report = decouple(inverted);
  CHECK(report.unstable_modes.size() == 4);
}

TEST_CASE("mode frequencies match a dense symmetric eigensolver as multisets") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.uniform_below(63);  // 2..64
    std::vector<double> first_row(n, 0.0);
    // symmetric circulant: c_j = c_{n-j}
    for (std::size_t j = 0; j <= n / 2; ++j) {
      const double value = rng.normal();
      first_row[j] = value;
      first_row[(n - j) % n] = value;
    }
    const auto chain = OscillatorChain<double>::circulant(first_row);
    const auto report = decouple(chain);
    CHECK(report.offdiag_residual < 1e-10);

    Eigen::SelfAdjointEigenSolver<MatrixR<double>> solver(chain.coupling);
    VectorR<double> ours = report.omega_squared;
    std::sort(ours.begin(), ours.end());
    CHECK((ours - solver.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}
