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
#include <vector>

#include "finiteq/rng.hpp"
#include "finiteq/statevec.hpp"

namespace finiteq::testing {

inline PureState<double> random_state(int num_qubits, SplitMix64& rng) {
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  VectorC<double> amps(dim);
  for (Eigen::Index j = 0; j < dim; ++j) amps[j] = std::complex<double>(rng.normal(), rng.normal());
  amps.normalize();
  return PureState<double>(num_qubits, std::move(amps));
}

inline HermitianOperator<double> random_hermitian(int num_qubits, SplitMix64& rng) {
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(num_qubits));
  MatrixC<double> g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
  }
  MatrixC<double> h = (g + g.adjoint()) / 2.0;
  return HermitianOperator<double>(num_qubits, std::move(h));
}

inline PureState<double> state_from(std::vector<std::complex<double>> amps) {
  const int n = qubits_for_dim(amps.size());
  VectorC<double> v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t j = 0; j < amps.size(); ++j) v[static_cast<Eigen::Index>(j)] = amps[j];
  return PureState<double>(n, std::move(v));
}

}  // namespace finiteq::testing
