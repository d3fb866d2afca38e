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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "finiteq/core.hpp"
#include "finiteq/statevec.hpp"

namespace finiteq {

/// Finest tensor-product split of a state: per-block unit factors, the phase
/// that aligns their product with the input, and the residual of that
/// reconstruction. nu is the largest block size (the naive complexity).
template <typename Real = double>
struct FactorizationReport {
  QubitPartition partition;
  std::vector<PureState<Real>> factors;  // one per block, in block order
  Complex<Real> global_phase;            // input ~ global_phase * (tensor of factors)
  Real residual;                         // max |difference| after phase alignment
  int nu;
};

template <typename Real = double>
struct ProductSplit {
  PureState<Real> subset_factor;
  PureState<Real> complement_factor;
};

namespace detail {

// Multiplies by a unit scalar making the first amplitude above the pivot
// threshold real nonnegative. Deterministic factor representative.
template <typename Real>
void phase_normalize(VectorC<Real>& amps) {
  for (Eigen::Index j = 0; j < amps.size(); ++j) {
    const Real mag = std::abs(amps[j]);
    if (mag > Tolerances<Real>::first_nonzero) {
      amps *= std::conj(amps[j]) / Complex<Real>(mag, 0);
      return;
    }
  }
}

// Scatters bits of `packed` into the positions listed in `qubits`.
inline std::uint64_t deposit_bits(std::uint64_t packed, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t p = 0; p < qubits.size(); ++p) {
    if ((packed >> p) & 1u) out |= std::uint64_t{1} << qubits[p];
  }
  return out;
}

// Gathers the bits of `index` at the positions in `qubits` into a packed value.
inline std::uint64_t extract_bits(std::uint64_t index, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t p = 0; p < qubits.size(); ++p) {
    if ((index >> qubits[p]) & 1u) out |= std::uint64_t{1} << p;
  }
  return out;
}

// Subsets of {0..m-1} with the given size, as sorted position lists in
// lexicographic order.
inline bool next_combination(std::vector<int>& comb, int m) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[i] == m - k + i) --i;
  if (i < 0) return false;
  ++comb[i];
  for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  return true;
}

}  // namespace detail

/// Reshapes the amplitudes into a 2^|S| x 2^{n-|S|} matrix (rows indexed by
/// the subset bits) and tests Schmidt rank 1: the leading squared singular
/// value must carry all but factor_eps of the total weight. On success the
/// two unit-norm, phase-normalized factors are returned.
template <typename Real>
std::optional<ProductSplit<Real>> is_product_across(const PureState<Real>& state, const std::vector<int>& subset) {
  const int n = state.num_qubits();
  std::vector<int> rows = subset;
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (rows.empty() || static_cast<int>(rows.size()) >= n) {
    throw validation_error("subset must be a nonempty proper subset of the qubits");
  }
  for (const int q : rows) {
    if (q < 0 || q >= n) throw validation_error("subset references qubit " + std::to_string(q));
  }
  std::vector<int> cols;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(rows.begin(), rows.end(), q)) cols.push_back(q);
  }

  const auto row_dim = static_cast<Eigen::Index>(std::uint64_t{1} << rows.size());
  const auto col_dim = static_cast<Eigen::Index>(std::uint64_t{1} << cols.size());
  MatrixC<Real> reshaped(row_dim, col_dim);
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(state.dim()); ++j) {
    reshaped(static_cast<Eigen::Index>(detail::extract_bits(j, rows)),
             static_cast<Eigen::Index>(detail::extract_bits(j, cols))) = state.amplitudes()[j];
  }

  Eigen::JacobiSVD<MatrixC<Real>> svd(reshaped, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const Real total = sv.squaredNorm();
  if (sv[0] * sv[0] < (Real(1) - Tolerances<Real>::factor_eps) * total) return std::nullopt;

  VectorC<Real> u = svd.matrixU().col(0);
  VectorC<Real> v = svd.matrixV().col(0).conjugate();
  u.normalize();
  v.normalize();
  detail::phase_normalize(u);
  detail::phase_normalize(v);
  return ProductSplit<Real>{PureState<Real>(static_cast<int>(rows.size()), std::move(u)),
                            PureState<Real>(static_cast<int>(cols.size()), std::move(v))};
}

namespace detail {

// Rebuilds the full state from per-block factors under the project index
// convention, then phase-aligns against the input.
template <typename Real>
std::pair<Complex<Real>, Real> align_reconstruction(const PureState<Real>& input, const QubitPartition& partition,
                                                    const std::vector<PureState<Real>>& factors) {
  VectorC<Real> rebuilt = VectorC<Real>::Ones(input.dim());
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(input.dim()); ++j) {
    Complex<Real> product(1, 0);
    for (std::size_t b = 0; b < factors.size(); ++b) {
      product *= factors[b].amplitude(extract_bits(j, partition.blocks()[b]));
    }
    rebuilt[static_cast<Eigen::Index>(j)] = product;
  }
  Complex<Real> overlap = rebuilt.dot(input.amplitudes());  // <rebuilt|input>
  Complex<Real> phase = std::abs(overlap) > Real(0) ? overlap / Complex<Real>(std::abs(overlap), 0)
                                                    : Complex<Real>(1, 0);
  const Real residual = (input.amplitudes() - phase * rebuilt).cwiseAbs().maxCoeff();
  return {phase, residual};
}

}  // namespace detail

/// Finest partition whose per-block factors reproduce the state. Candidate
/// subsets are scanned by increasing size, then lexicographically, and the
/// first factorizable one is peeled; the scan order makes the result
/// deterministic. Guarded at n <= 12.
template <typename Real>
FactorizationReport<Real> finest_factorization(const PureState<Real>& state) {
  const int n = state.num_qubits();
  if (n > 12) throw guard_error("finest_factorization is guarded at 12 qubits");

  std::vector<std::vector<int>> blocks;
  std::vector<PureState<Real>> factors;

  // `current` always holds the not-yet-factored remainder; `labels` maps its
  // local qubit positions back to original indices (kept ascending).
  PureState<Real> current = state;
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) labels[static_cast<std::size_t>(q)] = q;

  while (true) {
    const int m = current.num_qubits();
    if (m == 1) {
      VectorC<Real> amps = current.amplitudes();
      detail::phase_normalize(amps);
      blocks.push_back(labels);
      factors.emplace_back(1, std::move(amps));
      break;
    }
    bool peeled = false;
    for (int size = 1; size <= m / 2 && !peeled; ++size) {
      std::vector<int> positions(static_cast<std::size_t>(size));
      for (int p = 0; p < size; ++p) positions[static_cast<std::size_t>(p)] = p;
      do {
        auto split = is_product_across(current, positions);
        if (!split) continue;
        std::vector<int> block_labels;
        std::vector<int> rest_labels;
        for (int p = 0, s = 0; p < m; ++p) {
          if (s < size && positions[static_cast<std::size_t>(s)] == p) {
            block_labels.push_back(labels[static_cast<std::size_t>(p)]);
            ++s;
          } else {
            rest_labels.push_back(labels[static_cast<std::size_t>(p)]);
          }
        }
        blocks.push_back(block_labels);
        factors.push_back(std::move(split->subset_factor));
        current = std::move(split->complement_factor);
        labels = std::move(rest_labels);
        peeled = true;
        break;
      } while (detail::next_combination(positions, m));
    }
    if (!peeled) {
      VectorC<Real> amps = current.amplitudes();
      detail::phase_normalize(amps);
      blocks.push_back(labels);
      factors.emplace_back(m, std::move(amps));
      break;
    }
  }

  // Reorder blocks (and factors in step) by smallest element.
  std::vector<std::size_t> order(blocks.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return blocks[a][0] < blocks[b][0]; });
  std::vector<std::vector<int>> sorted_blocks;
  std::vector<PureState<Real>> sorted_factors;
  for (const std::size_t i : order) {
    sorted_blocks.push_back(blocks[i]);
    sorted_factors.push_back(std::move(factors[i]));
  }

  QubitPartition partition(n, sorted_blocks);
  const auto [phase, residual] = detail::align_reconstruction(state, partition, sorted_factors);
  const int nu = partition.max_block_size();
  return FactorizationReport<Real>{std::move(partition), std::move(sorted_factors), phase, residual, nu};
}

/// Largest block of the finest factorization.
template <typename Real>
int naive_state_complexity(const PureState<Real>& state) {
  return finest_factorization(state).nu;
}

/// Connected components of the qubit graph whose edges join qubits jointly
/// touched by a Pauli term with |coefficient| above the support cut. This is
/// the finest partition admitting a sum of per-block operators.
template <typename Real>
QubitPartition interaction_partition(const HermitianOperator<Real>& op) {
  const int n = op.num_qubits();
  if (n > 10) throw guard_error("interaction_partition is guarded at 10 qubits");
  const auto terms = pauli_decompose(op);

  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) parent[static_cast<std::size_t>(q)] = q;
  const auto find = [&](int q) {
    while (parent[static_cast<std::size_t>(q)] != q) {
      parent[static_cast<std::size_t>(q)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(q)])];
      q = parent[static_cast<std::size_t>(q)];
    }
    return q;
  };
  for (const auto& [pauli, coeff] : terms) {
    if (std::abs(coeff) <= Tolerances<Real>::support_cut) continue;
    int anchor = -1;
    for (int q = 0; q < n; ++q) {
      if (pauli[static_cast<std::size_t>(q)] == 'I') continue;
      if (anchor < 0) {
        anchor = q;
      } else {
        parent[static_cast<std::size_t>(find(q))] = find(anchor);
      }
    }
  }

  std::map<int, std::vector<int>> groups;
  for (int q = 0; q < n; ++q) groups[find(q)].push_back(q);
  std::vector<std::vector<int>> blocks;
  for (auto& [root, members] : groups) blocks.push_back(std::move(members));
  return QubitPartition(n, std::move(blocks));
}

/// Max block size of the interaction partition.
template <typename Real>
int naive_ham_complexity(const HermitianOperator<Real>& op) {
  return interaction_partition(op).max_block_size();
}

/// Places a 2^|B| dimensional block operator (qubit order = ascending block
/// labels) into the full n-qubit space, identity elsewhere.
template <typename Real>
MatrixC<Real> embed_block_operator(const MatrixC<Real>& block_matrix, const std::vector<int>& block_qubits, int n) {
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(n));
  const auto block_dim = static_cast<std::uint64_t>(block_matrix.rows());
  MatrixC<Real> out = MatrixC<Real>::Zero(dim, dim);
  std::uint64_t block_mask = 0;
  for (const int q : block_qubits) block_mask |= std::uint64_t{1} << q;
  for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
    const std::uint64_t rest = j & ~block_mask;
    const std::uint64_t row_bits = detail::extract_bits(j, block_qubits);
    for (std::uint64_t col_bits = 0; col_bits < block_dim; ++col_bits) {
      const std::uint64_t k = rest | detail::deposit_bits(col_bits, block_qubits);
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          block_matrix(static_cast<Eigen::Index>(row_bits), static_cast<Eigen::Index>(col_bits));
    }
  }
  return out;
}

/// Sum over blocks of the embedded per-block term sums. Terms whose support
/// spans blocks sit below the support cut by construction and are omitted;
/// the deviation from the input is therefore bounded by their total weight.
template <typename Real>
MatrixC<Real> assemble_block_decomposition(const HermitianOperator<Real>& op, const QubitPartition& partition) {
  const int n = op.num_qubits();
  const auto terms = pauli_decompose(op);
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(n));
  MatrixC<Real> out = MatrixC<Real>::Zero(dim, dim);

  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < partition.blocks().size(); ++b) {
    for (const int q : partition.blocks()[b]) block_of[static_cast<std::size_t>(q)] = static_cast<int>(b);
  }
  std::vector<std::map<std::string, Real>> block_terms(partition.blocks().size());
  for (const auto& [pauli, coeff] : terms) {
    int target = -1;
    bool spans = false;
    for (int q = 0; q < n && !spans; ++q) {
      if (pauli[static_cast<std::size_t>(q)] == 'I') continue;
      if (target < 0) {
        target = block_of[static_cast<std::size_t>(q)];
      } else if (block_of[static_cast<std::size_t>(q)] != target) {
        spans = true;
      }
    }
    if (spans) continue;           // below the support cut, dropped from the decomposition
    if (target < 0) target = 0;    // identity term joins the first block
    const auto& block = partition.blocks()[static_cast<std::size_t>(target)];
    std::string local(block.size(), 'I');
    for (std::size_t p = 0; p < block.size(); ++p) local[p] = pauli[static_cast<std::size_t>(block[p])];
    block_terms[static_cast<std::size_t>(target)][local] += coeff;
  }
  for (std::size_t b = 0; b < partition.blocks().size(); ++b) {
    if (block_terms[b].empty()) continue;
    const auto block_op =
        HermitianOperator<Real>::from_pauli_terms(static_cast<int>(partition.blocks()[b].size()), block_terms[b]);
    out += embed_block_operator(block_op.matrix(), partition.blocks()[b], n);
  }
  return out;
}

}  // namespace finiteq
