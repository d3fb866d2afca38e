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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace finiteq {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using VectorC = Eigen::Vector<std::complex<Real>, Eigen::Dynamic>;

template <typename Real>
using VectorR = Eigen::Vector<Real, Eigen::Dynamic>;

template <typename Real>
using MatrixC = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

/// Caller supplied data that breaks a documented contract (bad dimensions,
/// broken normalization, malformed files). Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A documented size guard was exceeded. Maps to CLI exit code 2.
class guard_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical tolerances for the double instantiation; other scalar types get
/// proportionally looser values.
template <typename Real>
struct Tolerances;

template <>
struct Tolerances<double> {
  static constexpr double norm = 1e-9;            // |sum |amp|^2 - 1|
  static constexpr double hermitian = 1e-10;      // entrywise |H - H^dag|
  static constexpr double factor_eps = 1e-8;      // squared-weight deficit for rank-1 tests
  static constexpr double coeff_drop = 1e-12;     // Pauli coefficients below this are dropped
  static constexpr double support_cut = 1e-10;    // Pauli terms above this build interaction edges
  static constexpr double first_nonzero = 1e-12;  // phase-convention pivot threshold
};

template <>
struct Tolerances<float> {
  static constexpr float norm = 1e-4f;
  static constexpr float hermitian = 1e-4f;
  static constexpr float factor_eps = 1e-4f;
  static constexpr float coeff_drop = 1e-6f;
  static constexpr float support_cut = 1e-4f;
  static constexpr float first_nonzero = 1e-6f;
};

inline std::uint64_t dim_for_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw validation_error("qubit count must be in [1, 30], got " + std::to_string(num_qubits));
  }
  return std::uint64_t{1} << num_qubits;
}

inline bool is_power_of_two(std::uint64_t value) { return value != 0 && (value & (value - 1)) == 0; }

/// log2 for exact powers of two.
inline int qubits_for_dim(std::uint64_t dim) {
  if (!is_power_of_two(dim)) {
    throw validation_error("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::uint64_t{1} << n) < dim) ++n;
  return n;
}

inline bool bit_at(std::uint64_t value, int position) { return (value >> position) & 1u; }

}  // namespace finiteq
