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

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "finiteq/core.hpp"

namespace finiteq {

/// Optional affine interpretation of a basis index as a physical quantity
/// (coordinate, momentum). Reporting only; never enters any computation.
template <typename Real>
struct AffineLabel {
  Real offset = Real(0);
  Real scale = Real(1);
  Real physical(std::uint64_t index) const { return offset + scale * static_cast<Real>(index); }
};

/// Normalized amplitude vector over the 2^n computational basis states.
///
/// Index convention (applied uniformly across the project): qubit i
/// contributes 2^i to the basis index, so index j encodes the bit string
/// a_0 a_1 ... a_{n-1} with j = sum_i a_i 2^i.
template <typename Real = double>
class PureState {
 public:
  using Scalar = std::complex<Real>;

  PureState(int num_qubits, VectorC<Real> amplitudes) : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits_));
    if (amplitudes_.size() != dim) {
      throw validation_error("state over " + std::to_string(num_qubits_) + " qubits needs " + std::to_string(dim) +
                             " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    const Real sumsq = amplitudes_.squaredNorm();
    if (std::abs(sumsq - Real(1)) > Tolerances<Real>::norm) {
      throw validation_error("state is not normalized: sum of |amplitude|^2 is " + std::to_string(sumsq));
    }
  }

  static PureState basis(int num_qubits, std::uint64_t index) {
    const auto dim = dim_for_qubits(num_qubits);
    if (index >= dim) {
      throw validation_error("basis index " + std::to_string(index) + " out of range for " +
                             std::to_string(num_qubits) + " qubits");
    }
    VectorC<Real> amps = VectorC<Real>::Zero(static_cast<Eigen::Index>(dim));
    amps[static_cast<Eigen::Index>(index)] = Scalar(1);
    return PureState(num_qubits, std::move(amps));
  }

  static PureState uniform(int num_qubits) {
    const auto dim = dim_for_qubits(num_qubits);
    VectorC<Real> amps =
        VectorC<Real>::Constant(static_cast<Eigen::Index>(dim), Scalar(Real(1) / std::sqrt(static_cast<Real>(dim))));
    return PureState(num_qubits, std::move(amps));
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const VectorC<Real>& amplitudes() const { return amplitudes_; }
  Scalar amplitude(std::uint64_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

  const std::optional<AffineLabel<Real>>& label() const { return label_; }
  void set_label(AffineLabel<Real> label) { label_ = label; }

 private:
  int num_qubits_;
  VectorC<Real> amplitudes_;
  std::optional<AffineLabel<Real>> label_;
};

namespace detail {

inline void check_pauli_string(const std::string& pauli, int num_qubits) {
  if (static_cast<int>(pauli.size()) != num_qubits) {
    throw validation_error("Pauli string '" + pauli + "' has length " + std::to_string(pauli.size()) +
                           ", expected " + std::to_string(num_qubits));
  }
  for (const char c : pauli) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw validation_error("Pauli string '" + pauli + "' contains a character outside {I, X, Y, Z}");
    }
  }
}

}  // namespace detail

/// Dense matrix of an n-qubit Pauli string; character i acts on qubit i.
/// Pauli strings are generalized permutations, so the build is one entry per column.
template <typename Real = double>
MatrixC<Real> pauli_string_matrix(const std::string& pauli) {
  const int n = static_cast<int>(pauli.size());
  detail::check_pauli_string(pauli, n);
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(n));
  std::uint64_t x_mask = 0;
  for (int q = 0; q < n; ++q) {
    if (pauli[q] == 'X' || pauli[q] == 'Y') x_mask |= std::uint64_t{1} << q;
  }
  MatrixC<Real> m = MatrixC<Real>::Zero(dim, dim);
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
    Complex<Real> phase(1, 0);
    for (int q = 0; q < n; ++q) {
      const bool bit = bit_at(j, q);
      switch (pauli[q]) {
        case 'Z':
          if (bit) phase = -phase;
          break;
        case 'Y':
          phase *= bit ? Complex<Real>(0, -1) : Complex<Real>(0, 1);
          break;
        default:
          break;
      }
    }
    m(static_cast<Eigen::Index>(j ^ x_mask), static_cast<Eigen::Index>(j)) = phase;
  }
  return m;
}

/// Dense Hermitian operator on n qubits, optionally carrying the weighted
/// Pauli-string form it was built from.
template <typename Real = double>
class HermitianOperator {
 public:
  using Scalar = std::complex<Real>;

  HermitianOperator(int num_qubits, MatrixC<Real> matrix) : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
    validate_shape_and_hermiticity();
  }

  static HermitianOperator from_pauli_terms(int num_qubits, const std::map<std::string, Real>& terms) {
    const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
    MatrixC<Real> m = MatrixC<Real>::Zero(dim, dim);
    for (const auto& [pauli, coeff] : terms) {
      detail::check_pauli_string(pauli, num_qubits);
      m += Complex<Real>(coeff, 0) * pauli_string_matrix<Real>(pauli);
    }
    HermitianOperator op(num_qubits, std::move(m));
    op.pauli_terms_ = terms;
    return op;
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const MatrixC<Real>& matrix() const { return matrix_; }
  const std::optional<std::map<std::string, Real>>& pauli_terms() const { return pauli_terms_; }

 private:
  void validate_shape_and_hermiticity() {
    const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits_));
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
      throw validation_error("operator on " + std::to_string(num_qubits_) + " qubits must be " + std::to_string(dim) +
                             "x" + std::to_string(dim));
    }
    const Real dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > Tolerances<Real>::hermitian) {
      throw validation_error("matrix is not Hermitian: max |H - H^dag| entry is " + std::to_string(dev));
    }
  }

  int num_qubits_;
  MatrixC<Real> matrix_;
  std::optional<std::map<std::string, Real>> pauli_terms_;
};

/// Disjoint, complete cover of {0..n-1}. Blocks are kept sorted internally
/// and ordered by their smallest element.
class QubitPartition {
 public:
  QubitPartition(int num_qubits, std::vector<std::vector<int>> blocks)
      : num_qubits_(num_qubits), blocks_(std::move(blocks)) {
    std::set<int> seen;
    for (auto& block : blocks_) {
      if (block.empty()) throw validation_error("partition block is empty");
      std::sort(block.begin(), block.end());
      for (const int q : block) {
        if (q < 0 || q >= num_qubits_) throw validation_error("partition references qubit " + std::to_string(q));
        if (!seen.insert(q).second) throw validation_error("qubit " + std::to_string(q) + " appears in two blocks");
      }
    }
    if (static_cast<int>(seen.size()) != num_qubits_) {
      throw validation_error("partition does not cover all " + std::to_string(num_qubits_) + " qubits");
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  static QubitPartition singletons(int num_qubits) {
    std::vector<std::vector<int>> blocks;
    for (int q = 0; q < num_qubits; ++q) blocks.push_back({q});
    return QubitPartition(num_qubits, std::move(blocks));
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int max_block_size() const {
    std::size_t best = 0;
    for (const auto& block : blocks_) best = std::max(best, block.size());
    return static_cast<int>(best);
  }

  friend bool operator==(const QubitPartition& a, const QubitPartition& b) {
    return a.num_qubits_ == b.num_qubits_ && a.blocks_ == b.blocks_;
  }

 private:
  int num_qubits_;
  std::vector<std::vector<int>> blocks_;
};

/// Amplitude of left at index j_left lands at index j_left + 2^{n_left} * j_right,
/// so the left factor occupies the low-order qubits.
template <typename Real>
PureState<Real> tensor_product(const PureState<Real>& left, const PureState<Real>& right) {
  const int n_left = left.num_qubits();
  const int n_total = n_left + right.num_qubits();
  VectorC<Real> amps(static_cast<Eigen::Index>(dim_for_qubits(n_total)));
  for (Eigen::Index jr = 0; jr < right.dim(); ++jr) {
    for (Eigen::Index jl = 0; jl < left.dim(); ++jl) {
      amps[jl + (left.dim() * jr)] = left.amplitudes()[jl] * right.amplitudes()[jr];
    }
  }
  return PureState<Real>(n_total, std::move(amps));
}

/// |<a|b>|^2.
template <typename Real>
Real fidelity(const PureState<Real>& a, const PureState<Real>& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw validation_error("fidelity requires equal qubit counts, got " + std::to_string(a.num_qubits()) + " and " +
                           std::to_string(b.num_qubits()));
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// H |psi> without renormalization.
template <typename Real>
VectorC<Real> apply_operator(const HermitianOperator<Real>& op, const PureState<Real>& state) {
  if (op.num_qubits() != state.num_qubits()) {
    throw validation_error("operator acts on " + std::to_string(op.num_qubits()) + " qubits, state has " +
                           std::to_string(state.num_qubits()));
  }
  return op.matrix() * state.amplitudes();
}

namespace detail {

// Peels the top qubit of a 2^m-dimensional coefficient matrix into the four
// single-qubit Pauli components and recurses. Total cost O(4^n n) with heavy
// pruning on structured operators.
template <typename Real>
void pauli_transform(const MatrixC<Real>& m, int qubits_left, std::string& suffix, Real prune_floor,
                     std::map<std::string, Real>& out, Real& max_imag) {
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() < prune_floor) return;
  if (qubits_left == 0) {
    const Complex<Real> c = m(0, 0);
    max_imag = std::max(max_imag, std::abs(c.imag()));
    if (std::abs(c.real()) > Tolerances<Real>::coeff_drop) {
      out.emplace(std::string(suffix.rbegin(), suffix.rend()), c.real());
    }
    return;
  }
  const Eigen::Index half = m.rows() / 2;
  const auto m00 = m.topLeftCorner(half, half);
  const auto m01 = m.topRightCorner(half, half);
  const auto m10 = m.bottomLeftCorner(half, half);
  const auto m11 = m.bottomRightCorner(half, half);
  const Complex<Real> halfc(Real(0.5), 0);
  const Complex<Real> half_i(0, Real(0.5));
  const MatrixC<Real> comp_i = halfc * (m00 + m11);
  const MatrixC<Real> comp_x = halfc * (m01 + m10);
  const MatrixC<Real> comp_y = half_i * (m01 - m10);
  const MatrixC<Real> comp_z = halfc * (m00 - m11);
  const std::pair<char, const MatrixC<Real>*> parts[] = {
      {'I', &comp_i}, {'X', &comp_x}, {'Y', &comp_y}, {'Z', &comp_z}};
  for (const auto& [label, part] : parts) {
    suffix.push_back(label);
    pauli_transform(*part, qubits_left - 1, suffix, prune_floor, out, max_imag);
    suffix.pop_back();
  }
}

}  // namespace detail

/// Coefficients c_P = Tr(P H) / 2^n over all n-character Pauli strings; only
/// entries above the drop tolerance are kept. Guarded at n <= 10.
template <typename Real>
std::map<std::string, Real> pauli_decompose(const HermitianOperator<Real>& op) {
  if (op.num_qubits() > 10) {
    throw guard_error("pauli_decompose is guarded at 10 qubits, got " + std::to_string(op.num_qubits()));
  }
  std::map<std::string, Real> out;
  std::string suffix;
  suffix.reserve(op.num_qubits());
  Real max_imag = 0;
  const Real prune_floor = Tolerances<Real>::coeff_drop / Real(10);
  detail::pauli_transform(op.matrix(), op.num_qubits(), suffix, prune_floor, out, max_imag);
  if (max_imag > Tolerances<Real>::hermitian) {
    throw validation_error("Pauli coefficients have imaginary part " + std::to_string(max_imag) +
                           "; input is not Hermitian");
  }
  return out;
}

/// exp(-i t H) via eigendecomposition of the Hermitian matrix.
template <typename Real>
MatrixC<Real> dense_propagator(const HermitianOperator<Real>& op, Real time) {
  Eigen::SelfAdjointEigenSolver<MatrixC<Real>> solver(op.matrix());
  VectorC<Real> phases(op.dim());
  for (Eigen::Index k = 0; k < op.dim(); ++k) {
    phases[k] = std::polar(Real(1), -time * solver.eigenvalues()[k]);
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace finiteq
