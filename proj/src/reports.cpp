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

#include "finiteq/reports.hpp"

#include <sstream>

#include "finiteq/discrete.hpp"

namespace finiteq::reports {

namespace {

// The worker count deliberately stays out of the echo: reports must be
// byte-identical for identical (inputs, limits, seed) at any parallelism.
json settings_to_json(const RunSettings& settings) {
  return json{{"family", family_name(settings.family)},
              {"depth", settings.limits.circuit_depth},
              {"samples", settings.limits.affine_samples},
              {"seed", settings.seed}};
}

json base_report(const std::string& command) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}};
}

}  // namespace

json analyze_state(const PureState<double>& state) {
  auto report = base_report("analyze-state");
  const auto factorization = finest_factorization(state);
  report["n"] = state.num_qubits();
  report["nu"] = factorization.nu;
  report["factorization"] = io::factorization_to_json(factorization);
  const auto certificate = two_value_certificate(state);
  report["two_value_certificate"] = certificate ? json(*certificate) : json(nullptr);
  return report;
}

json analyze_ham(const HermitianOperator<double>& op) {
  auto report = base_report("analyze-ham");
  const auto partition = interaction_partition(op);
  report["n"] = op.num_qubits();
  report["nu"] = partition.max_block_size();
  report["partition"] = io::partition_to_json(partition);
  const auto reassembled = assemble_block_decomposition(op, partition);
  report["reassembly_residual"] = (reassembled - op.matrix()).cwiseAbs().maxCoeff();
  json terms = json::array();
  for (const auto& [pauli, coeff] : pauli_decompose(op)) {
    terms.push_back(json{{"string", pauli}, {"coeff", coeff}});
  }
  report["pauli"] = std::move(terms);
  return report;
}

json reduce_state(const PureState<double>& state, const RunSettings& settings) {
  auto report = base_report("reduce");
  report["input"] = "state";
  report["config"] = settings_to_json(settings);
  EnumerationLimits limits = settings.limits;
  limits.seed = settings.seed;
  const auto result = true_state_complexity(state, settings.family, limits, settings.workers);
  report["result"] = io::complexity_report_to_json(result);
  return report;
}

json reduce_ham(const HermitianOperator<double>& op, const RunSettings& settings) {
  auto report = base_report("reduce");
  report["input"] = "operator";
  report["config"] = settings_to_json(settings);
  EnumerationLimits limits = settings.limits;
  limits.seed = settings.seed;
  const auto result = true_ham_complexity(op, settings.family, limits, settings.workers);
  report["result"] = io::complexity_report_to_json(result);
  const auto reduced = conjugate_hamiltonian(op, result.witness);
  report["reduced_partition"] = io::partition_to_json(interaction_partition(reduced));
  return report;
}

json fourier_transform(const PureState<double>& state, bool inverse) {
  auto report = base_report("qft");
  report["direction"] = inverse ? "inverse" : "forward";
  const auto transformed = qft(state, inverse ? FourierDirection::inverse : FourierDirection::forward);
  report["state"] = io::state_to_json(transformed);
  return report;
}

json momentum_check(int num_qubits) {
  auto report = base_report("momentum-check");
  report["n"] = num_qubits;
  const auto op = momentum_operator<double>(num_qubits);
  const auto dim = op.dim();
  report["hermiticity_error"] = (op.matrix() - op.matrix().adjoint()).cwiseAbs().maxCoeff();

  Eigen::SelfAdjointEigenSolver<MatrixC<double>> solver(op.matrix());
  double spectrum_error = 0.0;
  const double sqrt_n = std::sqrt(static_cast<double>(dim));
  for (Eigen::Index c = 0; c < dim; ++c) {
    const double expected = sqrt_n * (static_cast<double>(c) / static_cast<double>(dim) - 0.5);
    spectrum_error = std::max(spectrum_error, std::abs(solver.eigenvalues()[c] - expected));
  }
  report["spectrum_error"] = spectrum_error;

  double eigenvector_error = 0.0;
  for (Eigen::Index a = 0; a < dim; ++a) {
    const auto wave = qft(PureState<double>::basis(num_qubits, static_cast<std::uint64_t>(a)),
                          FourierDirection::inverse);
    const double eigenvalue = sqrt_n * (static_cast<double>(a) / static_cast<double>(dim) - 0.5);
    eigenvector_error = std::max(
        eigenvector_error,
        (op.matrix() * wave.amplitudes() - eigenvalue * wave.amplitudes()).cwiseAbs().maxCoeff());
  }
  report["eigenvector_error"] = eigenvector_error;
  if (num_qubits <= 8) {
    report["alternate_form_residual"] = momentum_alternate_form_residual<double>(num_qubits);
  } else {
    report["alternate_form_residual"] = json(nullptr);
  }
  return report;
}

json grover_run(int num_qubits, std::uint64_t marked_index, std::optional<double> t, std::optional<int> iterations) {
  if (t.has_value() == iterations.has_value()) {
    throw validation_error("provide exactly one of the phase t or the iteration count");
  }
  auto report = base_report("grover");
  report["n"] = num_qubits;
  report["marked_index"] = marked_index;
  PureState<double> state = t ? gsa_state(GsaParams<double>{num_qubits, *t, marked_index})
                              : grover_iterate(num_qubits, marked_index, *iterations);
  if (t) {
    report["t"] = *t;
  } else {
    report["iterations"] = *iterations;
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(dim_for_qubits(num_qubits))));
    report["equivalent_t"] = (2.0 * static_cast<double>(*iterations) + 1.0) * theta;
  }
  report["marked_probability"] = std::norm(state.amplitude(marked_index));
  const auto certificate = two_value_certificate(state);
  report["two_value_certificate"] = certificate ? json(*certificate) : json(nullptr);
  report["state"] = io::state_to_json(state);
  return report;
}

json q_probe_run(std::int64_t budget, double threshold, std::uint64_t trials, std::uint64_t seed, int workers) {
  auto report = base_report("q-probe");
  report["config"] = json{{"Q", budget}, {"threshold", threshold}, {"trials", trials}, {"seed", seed}};
  report.update(io::qprobe_report_to_json(q_probe<double>(budget, threshold, trials, seed, workers)));
  return report;
}

TomographyOutput tomography(const PureState<double>& state, std::uint64_t shots, std::uint64_t seed) {
  auto report = base_report("tomography");
  report["config"] = json{{"shots", shots}, {"seed", seed}};
  const auto counts = sample_measurements(state, shots, seed);
  const auto estimate = reconstruct_probabilities(counts, static_cast<std::uint64_t>(state.dim()));
  report["half_width"] = estimate.half_width;
  json count_list = json::array();
  for (const auto& [index, count] : counts) count_list.push_back(json::array({index, count}));
  report["counts"] = std::move(count_list);
  std::ostringstream csv;
  io::write_tomography_csv(csv, estimate);
  return {std::move(report), csv.str()};
}

EvolveOutput evolve(const HermitianOperator<double>& op, const PureState<double>& start, double dt, int steps,
                    const TruncationPolicy<double>& policy, bool compare_exact) {
  auto report = base_report("evolve");
  report["config"] = json{{"dt", dt},
                          {"steps", steps},
                          {"amplitude_floor", policy.amplitude_floor},
                          {"growth_floor", policy.growth_floor ? json(*policy.growth_floor) : json(nullptr)},
                          {"max_working_set", policy.max_working_set}};
  const auto trajectory = truncated_evolve(op, start, dt, steps, policy);
  report["final_working_set"] = trajectory.working_set_sizes.back();
  report["cumulative_discarded_weight"] = trajectory.cumulative_discarded_weight.back();
  report["max_step_norm_drift"] = trajectory.max_step_norm_drift;
  report["stability_warning"] = trajectory.stability_warning;
  if (compare_exact) {
    const auto exact = dense_propagator(op, dt * static_cast<double>(steps)) * start.amplitudes();
    report["fidelity_vs_exact"] =
        fidelity(trajectory.states.back(), PureState<double>(start.num_qubits(), exact.eval()));
  }
  std::ostringstream jsonl;
  io::write_trajectory_jsonl(jsonl, trajectory);
  return {std::move(report), jsonl.str()};
}

json modes(const OscillatorChain<double>& chain) {
  auto report = base_report("modes");
  const auto mode_report = decouple(chain);
  report["N"] = chain.num_sites;
  json omegas = json::array();
  for (Eigen::Index k = 0; k < mode_report.omega_squared.size(); ++k) {
    omegas.push_back(mode_report.omega_squared[k]);
  }
  report["omega_squared"] = std::move(omegas);
  report["offdiag_residual"] = mode_report.offdiag_residual;
  report["decoupled"] = mode_report.decoupled;
  report["unstable_modes"] = mode_report.unstable_modes;
  return report;
}

json validate(const std::filesystem::path& path) {
  auto report = base_report("validate");
  report["path"] = path.string();
  report["diagnostics"] = io::validate_file(path);
  return report;
}

}  // namespace finiteq::reports
