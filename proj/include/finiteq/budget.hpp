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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finiteq/core.hpp"
#include "finiteq/rng.hpp"
#include "finiteq/statevec.hpp"

namespace finiteq {

/// Measurement copies affordable for a state of complexity C under the total
/// resource Q: floor(Q / C), so copies * C never exceeds Q.
inline std::int64_t accuracy_for(std::int64_t total_budget, std::int64_t complexity) {
  if (total_budget < 1) throw validation_error("budget Q must be positive");
  if (complexity < 1) throw validation_error("complexity must be positive");
  return total_budget / complexity;
}

/// Total quantum-memory resource; accuracy divides it by the complexity.
struct Budget {
  std::int64_t total;
  std::int64_t accuracy_for(std::int64_t complexity) const { return finiteq::accuracy_for(total, complexity); }
};

/// Independent Born-rule draws; counts keyed by basis index sum to `copies`.
template <typename Real>
std::map<std::uint64_t, std::uint64_t> sample_measurements(const PureState<Real>& state, std::uint64_t copies,
                                                           std::uint64_t seed) {
  std::vector<Real> cumulative(static_cast<std::size_t>(state.dim()));
  Real running = 0;
  for (Eigen::Index j = 0; j < state.dim(); ++j) {
    running += std::norm(state.amplitudes()[j]);
    cumulative[static_cast<std::size_t>(j)] = running;
  }
  SplitMix64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t shot = 0; shot < copies; ++shot) {
    const Real u = static_cast<Real>(rng.uniform01()) * running;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto index = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
        std::distance(cumulative.begin(), it), state.dim() - 1));
    ++counts[index];
  }
  return counts;
}

/// Frequency estimates with the uniform resolution 1/sqrt(A) ("rectangle
/// height") plus per-bin binomial standard errors.
template <typename Real = double>
struct ProbabilityEstimate {
  VectorR<Real> probabilities;
  Real half_width;                // 1/sqrt(total shots)
  VectorR<Real> per_bin_stderr;   // sqrt(p (1-p) / A)
  std::uint64_t total_shots;
};

template <typename Real = double>
ProbabilityEstimate<Real> reconstruct_probabilities(const std::map<std::uint64_t, std::uint64_t>& counts,
                                                    std::uint64_t dimension) {
  std::uint64_t total = 0;
  for (const auto& [index, count] : counts) {
    if (index >= dimension) {
      throw validation_error("count at index " + std::to_string(index) + " outside dimension " +
                             std::to_string(dimension));
    }
    total += count;
  }
  if (total == 0) throw validation_error("cannot reconstruct probabilities from zero shots");
  VectorR<Real> probs = VectorR<Real>::Zero(static_cast<Eigen::Index>(dimension));
  for (const auto& [index, count] : counts) {
    probs[static_cast<Eigen::Index>(index)] = static_cast<Real>(count) / static_cast<Real>(total);
  }
  VectorR<Real> stderrs(static_cast<Eigen::Index>(dimension));
  for (Eigen::Index j = 0; j < stderrs.size(); ++j) {
    stderrs[j] = std::sqrt(probs[j] * (Real(1) - probs[j]) / static_cast<Real>(total));
  }
  return {std::move(probs), Real(1) / std::sqrt(static_cast<Real>(total)), std::move(stderrs), total};
}

/// Retention rule for the working set: keep an index when its amplitude is at
/// least amplitude_floor, or (when the growth clause is enabled) when the
/// one-step growth predictor |(H psi)_j| dt reaches growth_floor. The survivors
/// are then trimmed to the max_working_set largest amplitudes.
template <typename Real = double>
struct TruncationPolicy {
  Real amplitude_floor = Real(0);
  std::optional<Real> growth_floor;  // disabled when absent
  Eigen::Index max_working_set = 1;
};

template <typename Real = double>
struct Trajectory {
  std::vector<Real> times;
  std::vector<PureState<Real>> states;
  std::vector<Eigen::Index> working_set_sizes;
  std::vector<Real> step_discarded_weight;        // relative weight dropped at each step
  std::vector<Real> cumulative_discarded_weight;  // 1 - prod(1 - step weight)
  std::vector<Real> renorm_factors;               // norm after drop / norm before drop
  Real max_step_norm_drift = Real(0);             // integrator error indicator
  bool stability_warning = false;
};

namespace detail {

// Sparsity pattern of H at a relative floor; column -> rows with entries.
template <typename Real>
std::vector<std::vector<Eigen::Index>> adjacency_of(const MatrixC<Real>& h) {
  const Real floor = h.cwiseAbs().maxCoeff() * Real(1e-14);
  std::vector<std::vector<Eigen::Index>> adj(static_cast<std::size_t>(h.cols()));
  for (Eigen::Index c = 0; c < h.cols(); ++c) {
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
      if (std::abs(h(r, c)) > floor) adj[static_cast<std::size_t>(c)].push_back(r);
    }
  }
  return adj;
}

// y = -i H psi restricted to the candidate index list.
template <typename Real>
void restricted_schrodinger_rhs(const MatrixC<Real>& h, const std::vector<Eigen::Index>& idx,
                                const VectorC<Real>& psi, VectorC<Real>& out) {
  const Complex<Real> minus_i(0, -1);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    Complex<Real> sum(0, 0);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      sum += h(idx[a], idx[b]) * psi[static_cast<Eigen::Index>(b)];
    }
    out[static_cast<Eigen::Index>(a)] = minus_i * sum;
  }
}

}  // namespace detail

/// Working-set propagation of i dpsi/dt = H psi (natural units). Each step
/// expands the working set by one H-neighborhood, advances the restricted
/// amplitudes with classical RK4, applies the retention rule, trims to the
/// working-set cap (largest amplitudes first, smaller index wins ties),
/// records the discarded weight and renormalizes. With floors at zero and the
/// cap at N this reproduces the dense propagator to integrator accuracy.
template <typename Real>
Trajectory<Real> truncated_evolve(const HermitianOperator<Real>& op, const PureState<Real>& start, Real dt,
                                  int steps, const TruncationPolicy<Real>& policy) {
  if (op.num_qubits() != start.num_qubits()) {
    throw validation_error("operator and state qubit counts differ");
  }
  if (op.num_qubits() > 12) throw guard_error("truncated_evolve is guarded at 12 qubits");
  if (!(dt > Real(0))) throw validation_error("dt must be positive");
  if (steps < 1) throw validation_error("steps must be at least 1");
  if (policy.max_working_set < 1) throw validation_error("max_working_set must be at least 1");

  const Eigen::Index dim = op.dim();
  const auto& h = op.matrix();
  const auto adjacency = detail::adjacency_of(h);

  Trajectory<Real> traj;
  VectorC<Real> full = start.amplitudes().eval();

  // Initial working set: the support, trimmed to the cap if oversized.
  std::vector<Eigen::Index> working;
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (std::abs(full[j]) > Real(0)) working.push_back(j);
  }
  Real initial_drop = 0;
  if (static_cast<Eigen::Index>(working.size()) > policy.max_working_set) {
    std::sort(working.begin(), working.end(), [&](Eigen::Index a, Eigen::Index b) {
      const Real ma = std::abs(full[a]), mb = std::abs(full[b]);
      return ma != mb ? ma > mb : a < b;
    });
    for (std::size_t k = static_cast<std::size_t>(policy.max_working_set); k < working.size(); ++k) {
      initial_drop += std::norm(full[working[k]]);
      full[working[k]] = Complex<Real>(0, 0);
    }
    working.resize(static_cast<std::size_t>(policy.max_working_set));
    std::sort(working.begin(), working.end());
    full /= std::sqrt(Real(1) - initial_drop);
  }

  traj.times.push_back(Real(0));
  traj.states.emplace_back(start.num_qubits(), full);
  traj.working_set_sizes.push_back(static_cast<Eigen::Index>(working.size()));
  traj.step_discarded_weight.push_back(initial_drop);
  traj.cumulative_discarded_weight.push_back(initial_drop);
  traj.renorm_factors.push_back(std::sqrt(Real(1) - initial_drop));

  std::vector<char> in_candidate(static_cast<std::size_t>(dim), 0);
  for (int step = 1; step <= steps; ++step) {
    // 1. candidate set = working set + one H-neighborhood
    std::vector<Eigen::Index> candidates;
    for (const Eigen::Index j : working) {
      if (!in_candidate[static_cast<std::size_t>(j)]) {
        in_candidate[static_cast<std::size_t>(j)] = 1;
        candidates.push_back(j);
      }
      for (const Eigen::Index r : adjacency[static_cast<std::size_t>(j)]) {
        if (!in_candidate[static_cast<std::size_t>(r)]) {
          in_candidate[static_cast<std::size_t>(r)] = 1;
          candidates.push_back(r);
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (const Eigen::Index j : candidates) in_candidate[static_cast<std::size_t>(j)] = 0;

    const auto m = static_cast<Eigen::Index>(candidates.size());
    VectorC<Real> psi(m);
    for (Eigen::Index a = 0; a < m; ++a) psi[a] = full[candidates[static_cast<std::size_t>(a)]];
    const Real norm_before = psi.norm();

    // 2. RK4 on the restricted rows/columns
    VectorC<Real> k1(m), k2(m), k3(m), k4(m), stage(m);
    detail::restricted_schrodinger_rhs(h, candidates, psi, k1);
    stage = psi + (dt / Real(2)) * k1;
    detail::restricted_schrodinger_rhs(h, candidates, stage, k2);
    stage = psi + (dt / Real(2)) * k2;
    detail::restricted_schrodinger_rhs(h, candidates, stage, k3);
    stage = psi + dt * k3;
    detail::restricted_schrodinger_rhs(h, candidates, stage, k4);
    psi += (dt / Real(6)) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);

    const Real norm_after = psi.norm();
    const Real drift = std::abs(norm_after - norm_before);
    traj.max_step_norm_drift = std::max(traj.max_step_norm_drift, drift);
    if (drift > Real(1e-3)) traj.stability_warning = true;

    // 3. retention: amplitude floor OR growth predictor
    std::vector<Eigen::Index> retained;  // positions within candidates
    if (policy.growth_floor) {
      VectorC<Real> h_psi(m);
      detail::restricted_schrodinger_rhs(h, candidates, psi, h_psi);  // |(-i H psi)| = |H psi|
      for (Eigen::Index a = 0; a < m; ++a) {
        if (std::abs(psi[a]) >= policy.amplitude_floor || std::abs(h_psi[a]) * dt >= *policy.growth_floor) {
          retained.push_back(a);
        }
      }
    } else {
      for (Eigen::Index a = 0; a < m; ++a) {
        if (std::abs(psi[a]) >= policy.amplitude_floor) retained.push_back(a);
      }
    }

    // 4. trim to the cap, largest |amplitude| first, then smaller basis index
    if (static_cast<Eigen::Index>(retained.size()) > policy.max_working_set) {
      std::sort(retained.begin(), retained.end(), [&](Eigen::Index a, Eigen::Index b) {
        const Real ma = std::abs(psi[a]), mb = std::abs(psi[b]);
        return ma != mb ? ma > mb : candidates[static_cast<std::size_t>(a)] < candidates[static_cast<std::size_t>(b)];
      });
      retained.resize(static_cast<std::size_t>(policy.max_working_set));
      std::sort(retained.begin(), retained.end());
    }
    if (retained.empty()) throw validation_error("truncation policy discarded the whole state");

    Real kept_sq = 0;
    for (const Eigen::Index a : retained) kept_sq += std::norm(psi[a]);
    const Real total_sq = norm_after * norm_after;
    const Real dropped_rel = std::max(Real(0), Real(1) - kept_sq / total_sq);
    const Real renorm = std::sqrt(kept_sq) / norm_after;

    // 5. scatter back, renormalize, record
    full.setZero();
    const Real scale = Real(1) / std::sqrt(kept_sq);
    working.clear();
    for (const Eigen::Index a : retained) {
      const Eigen::Index j = candidates[static_cast<std::size_t>(a)];
      full[j] = psi[a] * scale;
      working.push_back(j);
    }

    traj.times.push_back(static_cast<Real>(step) * dt);
    traj.states.emplace_back(start.num_qubits(), full);
    traj.working_set_sizes.push_back(static_cast<Eigen::Index>(working.size()));
    traj.step_discarded_weight.push_back(dropped_rel);
    traj.cumulative_discarded_weight.push_back(
        Real(1) - (Real(1) - traj.cumulative_discarded_weight.back()) * (Real(1) - dropped_rel));
    traj.renorm_factors.push_back(renorm);
  }
  return traj;
}

}  // namespace finiteq
