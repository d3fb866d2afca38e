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

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "finiteq/core.hpp"
#include "finiteq/statevec.hpp"

namespace finiteq {

/// Uniform grid of N = 2^n cells starting at x0 with grain dx.
template <typename Real = double>
struct Grid {
  Real x0;
  Real dx;
  std::uint64_t num_points;

  Grid(Real x0_, Real dx_, std::uint64_t num_points_) : x0(x0_), dx(dx_), num_points(num_points_) {
    if (!(dx > Real(0))) throw validation_error("grid grain dx must be positive");
    if (!is_power_of_two(num_points)) throw validation_error("grid size must be a power of two");
  }

  /// Default coordinate grid for n qubits: the segment [0, sqrt(N)] split into
  /// N cells, so dx = 1/sqrt(N).
  static Grid default_for(int num_qubits) {
    const auto n_points = dim_for_qubits(num_qubits);
    return Grid(Real(0), Real(1) / std::sqrt(static_cast<Real>(n_points)), n_points);
  }

  Real point(std::uint64_t j) const { return x0 + dx * static_cast<Real>(j); }
};

template <typename Real>
struct DiscretizedState {
  PureState<Real> state;
  Real raw_norm;  // sum |psi(x_j)|^2 dx, a discretization quality diagnostic
};

/// Cell amplitudes psi(x_j) sqrt(dx), renormalized to a unit state. The raw
/// norm is returned alongside; it approaches the continuum L2 norm of the
/// sampled function as dx shrinks.
template <typename Real>
DiscretizedState<Real> discretize_wavefunction(const VectorC<Real>& samples, const Grid<Real>& grid) {
  if (static_cast<std::uint64_t>(samples.size()) != grid.num_points) {
    throw validation_error("sample count " + std::to_string(samples.size()) + " does not match grid size " +
                           std::to_string(grid.num_points));
  }
  const Real sqrt_dx = std::sqrt(grid.dx);
  VectorC<Real> amps = samples * Complex<Real>(sqrt_dx, 0);
  const Real raw_norm = amps.squaredNorm();
  if (raw_norm <= Real(0)) throw validation_error("cannot discretize all-zero samples");
  amps /= std::sqrt(raw_norm);
  const int n = qubits_for_dim(grid.num_points);
  PureState<Real> state(n, std::move(amps));
  state.set_label(AffineLabel<Real>{grid.x0, grid.dx});
  return {std::move(state), raw_norm};
}

enum class FourierDirection { forward, inverse };

namespace detail {

template <typename Real>
std::vector<Complex<Real>> fourier_twiddles(std::uint64_t dim, FourierDirection direction) {
  const Real sign = direction == FourierDirection::forward ? Real(-1) : Real(1);
  const Real step = sign * Real(2) * static_cast<Real>(M_PI) / static_cast<Real>(dim);
  std::vector<Complex<Real>> tw(dim);
  for (std::uint64_t k = 0; k < dim; ++k) tw[k] = std::polar(Real(1), step * static_cast<Real>(k));
  return tw;
}

}  // namespace detail

/// Forward kernel exp(-2 pi i a c / N) / sqrt(N), matching a transform that
/// sends |c> to sum_a exp(-2 pi i a c / N) |a> / sqrt(N). Note this is the
/// conjugate of the most common convention. Dense, guarded at n <= 10.
template <typename Real = double>
MatrixC<Real> qft_matrix(int num_qubits, FourierDirection direction) {
  if (num_qubits > 10) throw guard_error("qft_matrix is guarded at 10 qubits");
  const std::uint64_t dim = dim_for_qubits(num_qubits);
  const auto tw = detail::fourier_twiddles<Real>(dim, direction);
  const Real scale = Real(1) / std::sqrt(static_cast<Real>(dim));
  MatrixC<Real> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t a = 0; a < dim; ++a) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) = scale * tw[(a * c) % dim];
    }
  }
  return m;
}

/// Applies the transform without materializing the matrix; O(N^2).
template <typename Real>
PureState<Real> qft(const PureState<Real>& state, FourierDirection direction) {
  if (state.num_qubits() > 12) throw guard_error("qft application is guarded at 12 qubits");
  const std::uint64_t dim = static_cast<std::uint64_t>(state.dim());
  const auto tw = detail::fourier_twiddles<Real>(dim, direction);
  const Real scale = Real(1) / std::sqrt(static_cast<Real>(dim));
  VectorC<Real> out(state.dim());
  for (std::uint64_t a = 0; a < dim; ++a) {
    Complex<Real> sum(0, 0);
    for (std::uint64_t c = 0; c < dim; ++c) {
      sum += state.amplitudes()[static_cast<Eigen::Index>(c)] * tw[(a * c) % dim];
    }
    out[static_cast<Eigen::Index>(a)] = scale * sum;
  }
  return PureState<Real>(state.num_qubits(), std::move(out));
}

/// diag(a / sqrt(N)): coordinates covering [0, sqrt(N)).
template <typename Real = double>
HermitianOperator<Real> position_operator(int num_qubits) {
  if (num_qubits > 10) throw guard_error("position_operator is guarded at 10 qubits");
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  const Real inv_sqrt_n = Real(1) / std::sqrt(static_cast<Real>(dim));
  MatrixC<Real> m = MatrixC<Real>::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) m(a, a) = Complex<Real>(static_cast<Real>(a) * inv_sqrt_n, 0);
  return HermitianOperator<Real>(num_qubits, std::move(m));
}

/// diag(a / N): the dimensionless index fraction used by the momentum
/// construction. Kept separate from the coordinate operator diag(a / sqrt(N)).
template <typename Real = double>
HermitianOperator<Real> index_fraction_operator(int num_qubits) {
  if (num_qubits > 10) throw guard_error("index_fraction_operator is guarded at 10 qubits");
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  MatrixC<Real> m = MatrixC<Real>::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) m(a, a) = Complex<Real>(static_cast<Real>(a) / static_cast<Real>(dim), 0);
  return HermitianOperator<Real>(num_qubits, std::move(m));
}

/// QFT^-1 sqrt(N) (diag(a/N) - I/2) QFT. Spectrum is {sqrt(N) (c/N - 1/2)},
/// covering [-sqrt(N)/2, sqrt(N)/2), and QFT^-1 |a> is the eigenvector for
/// eigenvalue sqrt(N) (a/N - 1/2).
template <typename Real = double>
HermitianOperator<Real> momentum_operator(int num_qubits) {
  if (num_qubits > 10) throw guard_error("momentum_operator is guarded at 10 qubits");
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  const Real sqrt_n = std::sqrt(static_cast<Real>(dim));
  const MatrixC<Real> forward = qft_matrix<Real>(num_qubits, FourierDirection::forward);
  const MatrixC<Real> inverse = qft_matrix<Real>(num_qubits, FourierDirection::inverse);
  VectorC<Real> diag(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    diag[a] = Complex<Real>(sqrt_n * (static_cast<Real>(a) / static_cast<Real>(dim) - Real(0.5)), 0);
  }
  MatrixC<Real> m = inverse * diag.asDiagonal() * forward;
  return HermitianOperator<Real>(num_qubits, std::move(m));
}

/// Diagonal entries exp(i pi a) = (-1)^a; self-inverse.
template <typename Real = double>
VectorC<Real> phase_diagonal(int num_qubits) {
  if (num_qubits > 10) throw guard_error("phase_diagonal is guarded at 10 qubits");
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  VectorC<Real> diag(dim);
  for (Eigen::Index a = 0; a < dim; ++a) diag[a] = Complex<Real>(a % 2 == 0 ? Real(1) : Real(-1), 0);
  return diag;
}

/// Max-entry deviation between the direct momentum construction and its
/// phase-conjugated form QFT^-1 sqrt(N) diag(a/N) QFT conjugated by
/// diag((-1)^a). The two differ by a mod-N wrap of the spectrum shift, so the
/// value is reported rather than asserted anywhere.
template <typename Real = double>
Real momentum_alternate_form_residual(int num_qubits) {
  if (num_qubits > 8) throw guard_error("momentum_alternate_form_residual is guarded at 8 qubits");
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  const Real sqrt_n = std::sqrt(static_cast<Real>(dim));
  const MatrixC<Real> forward = qft_matrix<Real>(num_qubits, FourierDirection::forward);
  const MatrixC<Real> inverse = qft_matrix<Real>(num_qubits, FourierDirection::inverse);
  const MatrixC<Real> direct = momentum_operator<Real>(num_qubits).matrix();
  const VectorC<Real> phases = phase_diagonal<Real>(num_qubits);
  MatrixC<Real> fraction = MatrixC<Real>::Zero(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    fraction(a, a) = Complex<Real>(sqrt_n * static_cast<Real>(a) / static_cast<Real>(dim), 0);
  }
  // diag((-1)^a) is self-inverse, so conjugation uses the same diagonal twice.
  const MatrixC<Real> conjugated =
      phases.asDiagonal() * (inverse * fraction * forward) * phases.asDiagonal();
  return (direct - conjugated).cwiseAbs().maxCoeff();
}

}  // namespace finiteq
