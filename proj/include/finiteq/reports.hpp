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

#include <cstdint>
#include <optional>
#include <string>

#include "finiteq/io.hpp"

namespace finiteq::reports {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

/// Flags shared by every report so each output is self-describing and
/// reruns are byte-identical for identical configurations.
struct RunSettings {
  PermutationFamily family = PermutationFamily::affine_gf2;
  EnumerationLimits limits;
  std::uint64_t seed = 0;
  int workers = 1;
};

json analyze_state(const PureState<double>& state);
json analyze_ham(const HermitianOperator<double>& op);

/// Complexity minimization for a state or operator file content.
json reduce_state(const PureState<double>& state, const RunSettings& settings);
json reduce_ham(const HermitianOperator<double>& op, const RunSettings& settings);

json fourier_transform(const PureState<double>& state, bool inverse);
json momentum_check(int num_qubits);

/// Search-state construction: either the closed form at phase t or k
/// iteration rounds, plus the certificate verdict.
json grover_run(int num_qubits, std::uint64_t marked_index, std::optional<double> t, std::optional<int> iterations);

json q_probe_run(std::int64_t budget, double threshold, std::uint64_t trials, std::uint64_t seed, int workers);

struct TomographyOutput {
  json report;
  std::string csv;
};
TomographyOutput tomography(const PureState<double>& state, std::uint64_t shots, std::uint64_t seed);

struct EvolveOutput {
  json report;
  std::string trajectory_jsonl;
};
EvolveOutput evolve(const HermitianOperator<double>& op, const PureState<double>& start, double dt, int steps,
                    const TruncationPolicy<double>& policy, bool compare_exact);

json modes(const OscillatorChain<double>& chain);

json validate(const std::filesystem::path& path);

}  // namespace finiteq::reports
