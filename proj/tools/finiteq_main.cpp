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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "finiteq/reports.hpp"

namespace {

using finiteq::reports::json;

void emit(json report, const std::string& out_path, const json& inputs = {}) {
  if (!inputs.empty()) report["inputs"] = inputs;
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    finiteq::io::save_json(out_path, report);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw finiteq::validation_error("cannot write '" + path + "'");
  out << text;
}

// A reduce input is a state or an operator depending on its fields.
bool is_state_file(const json& j) { return j.contains("amplitudes"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional quantum state and Hamiltonian complexity toolkit"};
  app.require_subcommand(1);

  std::string in_path, ham_path, state_path, out_path, csv_path, traj_path, state_out_path;
  std::string family_name = "affine";
  int depth = 2;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  std::int64_t budget = 40;
  double threshold = 2.0 / 3.0;
  std::uint64_t trials = 200;
  std::uint64_t shots = 1000;
  int num_qubits = 1;
  std::uint64_t marked_index = 0;
  std::optional<double> phase_t;
  std::optional<int> iterations;
  double dt = 0.01;
  int steps = 100;
  double amplitude_floor = 0.0;
  std::optional<double> growth_floor;
  std::int64_t max_working_set = 0;  // 0 = full dimension
  bool inverse = false;
  bool compare_exact = false;

  const auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--family", family_name, "permutation family: sn | relabel | affine | cnot-circuit")
        ->check(CLI::IsMember({"sn", "relabel", "affine", "cnot-circuit"}));
    cmd->add_option("--depth", depth, "cnot-circuit breadth-first depth");
    cmd->add_option("--samples", samples, "affine sampling budget (required above 4 qubits)");
    cmd->add_option("--seed", seed, "seed for sampled enumeration");
    cmd->add_option("--workers", workers, "parallel workers");
  };

  auto* analyze_state = app.add_subcommand("analyze-state", "finest factorization and naive complexity");
  analyze_state->add_option("--in", in_path, "state file")->required();
  analyze_state->add_option("--out", out_path, "report path (stdout when absent)");

  auto* analyze_ham = app.add_subcommand("analyze-ham", "interaction partition and naive complexity");
  analyze_ham->add_option("--in", in_path, "operator file")->required();
  analyze_ham->add_option("--out", out_path, "report path");

  auto* reduce = app.add_subcommand("reduce", "minimize complexity over a permutation family");
  reduce->add_option("--in", in_path, "state or operator file")->required();
  reduce->add_option("--out", out_path, "report path");
  add_search_flags(reduce);

  auto* qft_cmd = app.add_subcommand("qft", "discrete Fourier transform of a state file");
  qft_cmd->add_option("--in", in_path, "state file")->required();
  qft_cmd->add_flag("--inverse", inverse, "apply the inverse transform");
  qft_cmd->add_option("--out", out_path, "report path");
  qft_cmd->add_option("--state-out", state_out_path, "write the transformed state as a loadable state file");

  auto* momentum = app.add_subcommand("momentum-check", "momentum operator diagnostics");
  momentum->add_option("--n", num_qubits, "qubit count")->required();
  momentum->add_option("--out", out_path, "report path");

  auto* grover_cmd = app.add_subcommand("grover", "search-iteration states and the complexity certificate");
  grover_cmd->add_option("--n", num_qubits, "qubit count")->required();
  grover_cmd->add_option("--j0", marked_index, "marked basis index");
  double t_value = 0.0;
  auto* t_opt = grover_cmd->add_option("--t", t_value, "phase parameter of the closed form");
  int k_value = 0;
  auto* k_opt = grover_cmd->add_option("--iterations", k_value, "iteration count from the uniform start");
  grover_cmd->add_option("--out", out_path, "report path");
  grover_cmd->add_option("--state-out", state_out_path, "write the resulting state file");

  auto* probe = app.add_subcommand("q-probe", "largest workable register under the accuracy-complexity budget");
  probe->add_option("--Q", budget, "total budget (default 40)");
  probe->add_option("--threshold", threshold, "success-rate threshold");
  probe->add_option("--trials", trials, "trials per register size");
  probe->add_option("--seed", seed, "base seed");
  probe->add_option("--workers", workers, "parallel workers");
  probe->add_option("--out", out_path, "report path");

  auto* tomography = app.add_subcommand("tomography", "measurement-shot reconstruction of |amplitude|^2");
  tomography->add_option("--in", in_path, "state file")->required();
  tomography->add_option("--shots", shots, "measurement copies");
  tomography->add_option("--seed", seed, "sampling seed");
  tomography->add_option("--csv", csv_path, "histogram table path (CSV)");
  tomography->add_option("--out", out_path, "report path");

  auto* evolve = app.add_subcommand("evolve", "working-set truncated evolution");
  evolve->add_option("--ham", ham_path, "operator file")->required();
  evolve->add_option("--state", state_path, "start state file")->required();
  evolve->add_option("--dt", dt, "time step");
  evolve->add_option("--steps", steps, "step count");
  evolve->add_option("--eps", amplitude_floor, "amplitude retention floor");
  double growth_value = 0.0;
  auto* growth_opt = evolve->add_option("--eps-growth", growth_value, "growth-predictor floor (enables the rule)");
  evolve->add_option("--max-set", max_working_set, "working set cap (default: full dimension)");
  evolve->add_flag("--compare-exact", compare_exact, "report fidelity against the dense propagator");
  evolve->add_option("--traj", traj_path, "trajectory path (JSON lines)");
  evolve->add_option("--out", out_path, "report path");

  auto* modes = app.add_subcommand("modes", "normal-mode decoupling of a circulant oscillator chain");
  modes->add_option("--in", in_path, "chain file")->required();
  modes->add_option("--out", out_path, "report path");

  auto* validate = app.add_subcommand("validate", "diagnose a state/operator/chain file");
  validate->add_option("path", in_path, "file to check")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_state->parsed()) {
      emit(finiteq::reports::analyze_state(finiteq::io::load_state(in_path)), out_path, json{{"in", in_path}});
    } else if (analyze_ham->parsed()) {
      emit(finiteq::reports::analyze_ham(finiteq::io::load_operator(in_path)), out_path, json{{"in", in_path}});
    } else if (reduce->parsed()) {
      finiteq::reports::RunSettings settings;
      settings.family = finiteq::family_from_name(family_name);
      settings.limits.circuit_depth = depth;
      settings.limits.affine_samples = samples;
      settings.seed = seed;
      settings.workers = workers;
      const json input = finiteq::io::load_json(in_path);
      if (is_state_file(input)) {
        emit(finiteq::reports::reduce_state(finiteq::io::state_from_json(input), settings), out_path,
             json{{"in", in_path}});
      } else {
        emit(finiteq::reports::reduce_ham(finiteq::io::operator_from_json(input), settings), out_path,
             json{{"in", in_path}});
      }
    } else if (qft_cmd->parsed()) {
      const auto report = finiteq::reports::fourier_transform(finiteq::io::load_state(in_path), inverse);
      if (!state_out_path.empty()) finiteq::io::save_json(state_out_path, report.at("state"));
      emit(report, out_path, json{{"in", in_path}});
    } else if (momentum->parsed()) {
      emit(finiteq::reports::momentum_check(num_qubits), out_path);
    } else if (grover_cmd->parsed()) {
      if (t_opt->count() > 0) phase_t = t_value;
      if (k_opt->count() > 0) iterations = k_value;
      const auto report = finiteq::reports::grover_run(num_qubits, marked_index, phase_t, iterations);
      if (!state_out_path.empty()) finiteq::io::save_json(state_out_path, report.at("state"));
      emit(report, out_path);
    } else if (probe->parsed()) {
      emit(finiteq::reports::q_probe_run(budget, threshold, trials, seed, workers), out_path);
    } else if (tomography->parsed()) {
      const auto output = finiteq::reports::tomography(finiteq::io::load_state(in_path), shots, seed);
      if (!csv_path.empty()) write_text(csv_path, output.csv);
      emit(output.report, out_path, json{{"in", in_path}});
    } else if (evolve->parsed()) {
      const auto op = finiteq::io::load_operator(ham_path);
      const auto start = finiteq::io::load_state(state_path);
      finiteq::TruncationPolicy<double> policy;
      policy.amplitude_floor = amplitude_floor;
      if (growth_opt->count() > 0) growth_floor = growth_value;
      policy.growth_floor = growth_floor;
      policy.max_working_set = max_working_set > 0 ? max_working_set : op.dim();
      const auto output = finiteq::reports::evolve(op, start, dt, steps, policy, compare_exact);
      if (!traj_path.empty()) write_text(traj_path, output.trajectory_jsonl);
      emit(output.report, out_path, json{{"ham", ham_path}, {"state", state_path}});
    } else if (modes->parsed()) {
      emit(finiteq::reports::modes(finiteq::io::load_chain(in_path)), out_path, json{{"in", in_path}});
    } else if (validate->parsed()) {
      const auto report = finiteq::reports::validate(in_path);
      std::cout << report.at("diagnostics").get<std::string>() << '\n';
      if (!out_path.empty()) finiteq::io::save_json(out_path, report);
    }
  } catch (const finiteq::guard_error& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return 2;
  } catch (const finiteq::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
