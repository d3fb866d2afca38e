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

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "finiteq/budget.hpp"
#include "finiteq/canonical.hpp"
#include "finiteq/factorize.hpp"
#include "finiteq/grover.hpp"
#include "finiteq/oscillators.hpp"
#include "finiteq/statevec.hpp"

namespace finiteq::io {

using json = nlohmann::json;

// ---- file formats ----------------------------------------------------------
// state:    {"n": int, "amplitudes": [[re, im], ...]}        (2^n entries)
// operator: {"n": int, "dense": [[[re, im], ...], ...]}
//        or {"n": int, "pauli": [{"string": "XIZ", "coeff": c}, ...]}
// chain:    {"N": int, "first_row": [c0, c1, ...]}           (circulant coupling)
// witness:  {"family": tag, "n": int, "params": {...}}

json state_to_json(const PureState<double>& state);
PureState<double> state_from_json(const json& j);

json operator_to_json(const HermitianOperator<double>& op);
HermitianOperator<double> operator_from_json(const json& j);

json chain_to_json(const OscillatorChain<double>& chain);
OscillatorChain<double> chain_from_json(const json& j);

json permutation_to_json(const BasisPermutation& perm);
BasisPermutation permutation_from_json(const json& j);

json partition_to_json(const QubitPartition& partition);
json factorization_to_json(const FactorizationReport<double>& report);
json complexity_report_to_json(const ComplexityReport& report);
json qprobe_report_to_json(const QProbeReport<double>& report);

/// One JSON record per stored time; "top" lists the up-to-32 largest
/// amplitudes as [index, re, im] triples.
void write_trajectory_jsonl(std::ostream& out, const Trajectory<double>& trajectory);

/// CSV columns: index, estimate, half_width.
void write_tomography_csv(std::ostream& out, const ProbabilityEstimate<double>& estimate);

// ---- files -----------------------------------------------------------------

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

PureState<double> load_state(const std::filesystem::path& path);
HermitianOperator<double> load_operator(const std::filesystem::path& path);
OscillatorChain<double> load_chain(const std::filesystem::path& path);

/// Diagnostic pass over a state/operator/chain file: returns "ok" or a
/// description of the first violation found (never throws on content
/// problems; unreadable files still raise validation_error).
std::string validate_file(const std::filesystem::path& path);

}  // namespace finiteq::io
