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

namespace finiteq {

/// Unit-mass coupled oscillators with a symmetric quadratic-form matrix.
template <typename Real = double>
struct OscillatorChain {
  Eigen::Index num_sites;
  MatrixR<Real> coupling;

  OscillatorChain(Eigen::Index num_sites_, MatrixR<Real> coupling_)
      : num_sites(num_sites_), coupling(std::move(coupling_)) {
    if (num_sites < 2) throw validation_error("oscillator chain needs at least 2 sites");
    if (coupling.rows() != num_sites || coupling.cols() != num_sites) {
      throw validation_error("coupling matrix must be " + std::to_string(num_sites) + "x" + std::to_string(num_sites));
    }
    const Real dev = (coupling - coupling.transpose()).cwiseAbs().maxCoeff();
    if (dev > Real(1e-12)) {
      throw validation_error("coupling matrix is not symmetric: max deviation " + std::to_string(dev));
    }
  }

  static OscillatorChain circulant(const std::vector<Real>& first_row) {
    const auto n = static_cast<Eigen::Index>(first_row.size());
    MatrixR<Real> k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        k(i, j) = first_row[static_cast<std::size_t>((j - i + n) % n)];
      }
    }
    return OscillatorChain(n, std::move(k));
  }

  bool is_circulant(Real tol = Real(1e-12)) const {
    for (Eigen::Index i = 1; i < num_sites; ++i) {
      for (Eigen::Index j = 0; j < num_sites; ++j) {
        if (std::abs(coupling(i, j) - coupling(0, (j - i + num_sites) % num_sites)) > tol) return false;
      }
    }
    return true;
  }
};

/// Q_k = prefactor * sum_l exp(-i alpha l k) q_l. The defaults
/// (1/sqrt(N), 2 pi / N) make the map unitary, which is what lets it act as a
/// relabeling of basis vectors at the quantum level.
template <typename Real>
VectorC<Real> normal_mode_transform(const VectorR<Real>& coordinates, Real prefactor, Real alpha) {
  const Eigen::Index n = coordinates.size();
  if (n < 2) throw validation_error("normal mode transform needs at least 2 coordinates");
  VectorC<Real> out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Complex<Real> sum(0, 0);
    for (Eigen::Index l = 0; l < n; ++l) {
      sum += std::polar(Real(1), -alpha * static_cast<Real>(l) * static_cast<Real>(k)) * coordinates[l];
    }
    out[k] = prefactor * sum;
  }
  return out;
}

template <typename Real>
VectorC<Real> normal_mode_transform(const VectorR<Real>& coordinates) {
  const auto n = static_cast<Real>(coordinates.size());
  return normal_mode_transform(coordinates, Real(1) / std::sqrt(n),
                               Real(2) * static_cast<Real>(M_PI) / n);
}

/// Whether the (prefactor, alpha) pair gives a unitary map at size N. Callers
/// supplying non-default parameters can use this to flag non-unitary choices,
/// which cannot act as basis relabelings at the quantum level.
template <typename Real>
bool normal_mode_transform_is_unitary(Eigen::Index num_sites, Real prefactor, Real alpha, Real tol = Real(1e-10)) {
  if (num_sites < 2) throw validation_error("need at least 2 sites");
  MatrixC<Real> m(num_sites, num_sites);
  for (Eigen::Index k = 0; k < num_sites; ++k) {
    for (Eigen::Index l = 0; l < num_sites; ++l) {
      m(k, l) = prefactor * std::polar(Real(1), -alpha * static_cast<Real>(l) * static_cast<Real>(k));
    }
  }
  return (m * m.adjoint() - MatrixC<Real>::Identity(num_sites, num_sites)).cwiseAbs().maxCoeff() < tol;
}

/// Conjugate transform (positive exponent); inverts the default transform.
template <typename Real>
VectorC<Real> normal_mode_inverse(const VectorC<Real>& modes) {
  const Eigen::Index n = modes.size();
  if (n < 2) throw validation_error("normal mode inverse needs at least 2 modes");
  const Real alpha = Real(2) * static_cast<Real>(M_PI) / static_cast<Real>(n);
  const Real prefactor = Real(1) / std::sqrt(static_cast<Real>(n));
  VectorC<Real> out(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    Complex<Real> sum(0, 0);
    for (Eigen::Index k = 0; k < n; ++k) {
      sum += std::polar(Real(1), alpha * static_cast<Real>(l) * static_cast<Real>(k)) * modes[k];
    }
    out[l] = prefactor * sum;
  }
  return out;
}

template <typename Real = double>
struct ModeReport {
  VectorR<Real> omega_squared;              // squared mode frequencies, diagonal of F K F^dag
  Real offdiag_residual;                    // max modulus off the diagonal
  std::vector<Eigen::Index> unstable_modes; // omega^2 < 0
  bool decoupled;                           // residual < 1e-10
};

/// Conjugates the coupling matrix by the unitary mode transform and reads off
/// the squared frequencies. Only circulant (translation invariant) couplings
/// are accepted: those are exactly what the plain Fourier map diagonalizes.
template <typename Real>
ModeReport<Real> decouple(const OscillatorChain<Real>& chain) {
  if (!chain.is_circulant()) {
    throw validation_error(
        "coupling matrix is not circulant; the Fourier transform only decouples "
        "translation-invariant chains (use a general symmetric eigensolver instead)");
  }
  const Eigen::Index n = chain.num_sites;
  MatrixC<Real> fourier(n, n);
  const Real alpha = Real(2) * static_cast<Real>(M_PI) / static_cast<Real>(n);
  const Real scale = Real(1) / std::sqrt(static_cast<Real>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      fourier(k, l) = scale * std::polar(Real(1), -alpha * static_cast<Real>(k) * static_cast<Real>(l));
    }
  }
  const MatrixC<Real> rotated = fourier * chain.coupling.template cast<Complex<Real>>() * fourier.adjoint();

  ModeReport<Real> report;
  report.omega_squared.resize(n);
  Real residual = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (r == c) continue;
      residual = std::max(residual, std::abs(rotated(r, c)));
    }
    residual = std::max(residual, std::abs(rotated(r, r).imag()));
    report.omega_squared[r] = rotated(r, r).real();
    if (report.omega_squared[r] < -Real(1e-12)) report.unstable_modes.push_back(r);
  }
  report.offdiag_residual = residual;
  report.decoupled = residual < Real(1e-10);
  return report;
}

}  // namespace finiteq
