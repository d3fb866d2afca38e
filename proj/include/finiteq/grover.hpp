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
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "finiteq/budget.hpp"
#include "finiteq/core.hpp"
#include "finiteq/rng.hpp"
#include "finiteq/statevec.hpp"

namespace finiteq {

/// Parameters of the two-valued search-iteration state: amplitude sin(t) on
/// the marked index, cos(t)/sqrt(N-1) on every other index.
template <typename Real = double>
struct GsaParams {
  int num_qubits;
  Real t;
  std::uint64_t marked_index;
};

template <typename Real>
PureState<Real> gsa_state(const GsaParams<Real>& params) {
  const std::uint64_t dim = dim_for_qubits(params.num_qubits);
  if (params.marked_index >= dim) {
    throw validation_error("marked index " + std::to_string(params.marked_index) + " out of range");
  }
  const Real alpha = std::cos(params.t) / std::sqrt(static_cast<Real>(dim - 1));
  const Real beta = std::sin(params.t);
  VectorC<Real> amps = VectorC<Real>::Constant(static_cast<Eigen::Index>(dim), Complex<Real>(alpha, 0));
  amps[static_cast<Eigen::Index>(params.marked_index)] = Complex<Real>(beta, 0);
  return PureState<Real>(params.num_qubits, std::move(amps));
}

/// k rounds of (sign flip on the marked index, inversion about the mean)
/// starting from the uniform state. Equals gsa_state with t = (2k+1) theta,
/// sin(theta) = 1/sqrt(N). Guarded at n <= 12.
template <typename Real = double>
PureState<Real> grover_iterate(int num_qubits, std::uint64_t marked_index, int iterations) {
  if (num_qubits > 12) throw guard_error("grover_iterate is guarded at 12 qubits");
  if (iterations < 0) throw validation_error("iteration count must be nonnegative");
  const std::uint64_t dim = dim_for_qubits(num_qubits);
  if (marked_index >= dim) {
    throw validation_error("marked index " + std::to_string(marked_index) + " out of range");
  }
  VectorC<Real> amps =
      VectorC<Real>::Constant(static_cast<Eigen::Index>(dim), Complex<Real>(Real(1) / std::sqrt(static_cast<Real>(dim)), 0));
  const auto marked = static_cast<Eigen::Index>(marked_index);
  for (int k = 0; k < iterations; ++k) {
    amps[marked] = -amps[marked];
    const Complex<Real> mean = amps.sum() / Complex<Real>(static_cast<Real>(dim), 0);
    amps = (Real(2) * mean) * VectorC<Real>::Ones(static_cast<Eigen::Index>(dim)) - amps;
  }
  return PureState<Real>(num_qubits, std::move(amps));
}

/// Exact complexity certificate: when the amplitude multiset holds exactly two
/// distinct nonzero values with multiplicities (N-1, 1), no basis permutation
/// can factor the state, so its complexity is n for every family. Values are
/// compared as complex numbers at relative tolerance 1e-9. Returns n when the
/// pattern holds, nothing otherwise.
template <typename Real>
std::optional<int> two_value_certificate(const PureState<Real>& state) {
  if (state.num_qubits() < 2) return std::nullopt;
  const auto& amps = state.amplitudes();
  const Real rel_tol = Real(1e-9);
  const Real scale = amps.cwiseAbs().maxCoeff();

  const auto same = [rel_tol](Complex<Real> a, Complex<Real> b) {
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
  };

  const Complex<Real> first = amps[0];
  std::optional<Complex<Real>> second;
  std::uint64_t first_count = 0, second_count = 0;
  for (Eigen::Index j = 0; j < amps.size(); ++j) {
    if (same(amps[j], first)) {
      ++first_count;
    } else if (!second) {
      second = amps[j];
      ++second_count;
    } else if (same(amps[j], *second)) {
      ++second_count;
    } else {
      return std::nullopt;  // three or more distinct values
    }
  }
  if (!second) return std::nullopt;  // a single value
  const auto dim = static_cast<std::uint64_t>(amps.size());
  const bool split_ok = (first_count == dim - 1 && second_count == 1) ||
                        (first_count == 1 && second_count == dim - 1);
  if (!split_ok) return std::nullopt;
  const Real nonzero_floor = rel_tol * scale;
  if (std::abs(first) <= nonzero_floor || std::abs(*second) <= nonzero_floor) return std::nullopt;
  return state.num_qubits();
}

template <typename Real = double>
struct QProbeEntry {
  int num_qubits;
  std::uint64_t copies;  // floor(Q / n), the per-trial measurement budget
  Real success_rate;
};

template <typename Real = double>
struct QProbeReport {
  std::int64_t budget;
  Real threshold;
  std::uint64_t trials;
  std::uint64_t seed;
  std::vector<QProbeEntry<Real>> per_n;
  int max_workable_n;  // largest n meeting the threshold, 0 if none
};

namespace detail {

// Modal outcome of a counts map; the smallest index wins ties.
inline std::uint64_t modal_outcome(const std::map<std::uint64_t, std::uint64_t>& counts) {
  std::uint64_t best_index = 0, best_count = 0;
  for (const auto& [index, count] : counts) {
    if (count > best_count) {
      best_count = count;
      best_index = index;
    }
  }
  return best_index;
}

}  // namespace detail

/// Scans n = 1..12. Each n is budgeted floor(Q/n) measurement copies (the
/// search state is maximally complex, C = n); a trial draws a marked index,
/// runs the search to its optimal iteration count, samples the copies and
/// succeeds when the modal outcome is the marked index. Returns the largest n
/// whose empirical success rate clears the threshold. Trials derive their own
/// seeds, so worker count never changes the report.
template <typename Real = double>
QProbeReport<Real> q_probe(std::int64_t total_budget, Real success_threshold, std::uint64_t trials,
                           std::uint64_t seed, int workers = 1) {
  if (total_budget < 1) throw validation_error("budget Q must be positive");
  if (!(success_threshold > Real(0) && success_threshold < Real(1))) {
    throw validation_error("success threshold must lie strictly between 0 and 1");
  }
  if (trials < 1) throw validation_error("at least one trial required");
  if (workers < 1) throw validation_error("worker count must be positive");

  constexpr int kMaxQubits = 12;
  QProbeReport<Real> report;
  report.budget = total_budget;
  report.threshold = success_threshold;
  report.trials = trials;
  report.seed = seed;
  report.max_workable_n = 0;

  for (int n = 1; n <= kMaxQubits; ++n) {
    const auto copies = static_cast<std::uint64_t>(accuracy_for(total_budget, n));
    Real rate = 0;
    if (copies > 0) {
      const std::uint64_t dim = dim_for_qubits(n);
      const Real theta = std::asin(Real(1) / std::sqrt(static_cast<Real>(dim)));
      const int optimal_k = static_cast<int>(
          std::llround(static_cast<Real>(M_PI) / (Real(4) * theta) - Real(0.5)));
      // The post-iteration amplitudes depend on the marked index only through
      // its position; iterate once and relocate per trial.
      const PureState<Real> reference = grover_iterate<Real>(n, 0, optimal_k);

      const auto run_trial = [&](std::uint64_t trial) -> bool {
        const std::uint64_t trial_seed = derive_seed(seed, {static_cast<std::uint64_t>(n), trial});
        SplitMix64 rng(trial_seed);
        const std::uint64_t marked = rng.uniform_below(dim);
        VectorC<Real> amps = reference.amplitudes();
        std::swap(amps[0], amps[static_cast<Eigen::Index>(marked)]);
        const PureState<Real> prepared(n, std::move(amps));
        const auto counts = sample_measurements(prepared, copies, rng.next());
        return detail::modal_outcome(counts) == marked;
      };

      std::uint64_t successes = 0;
      if (workers == 1) {
        for (std::uint64_t t = 0; t < trials; ++t) successes += run_trial(t) ? 1 : 0;
      } else {
        std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
          pool.emplace_back([&, w] {
            std::uint64_t local = 0;
            for (std::uint64_t t = static_cast<std::uint64_t>(w); t < trials; t += static_cast<std::uint64_t>(workers)) {
              local += run_trial(t) ? 1 : 0;
            }
            partial[static_cast<std::size_t>(w)] = local;
          });
        }
        for (auto& th : pool) th.join();
        for (const auto p : partial) successes += p;
      }
      rate = static_cast<Real>(successes) / static_cast<Real>(trials);
    }
    report.per_n.push_back(QProbeEntry<Real>{n, copies, rate});
    if (copies > 0 && rate >= success_threshold) report.max_workable_n = n;
  }
  return report;
}

}  // namespace finiteq
