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

#include "finiteq/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace finiteq::io {

namespace {

json complex_to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw validation_error("complex entries must be [re, im] number pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int read_qubit_count(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw validation_error(std::string("missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

}  // namespace

json state_to_json(const PureState<double>& state) {
  json amplitudes = json::array();
  for (Eigen::Index i = 0; i < state.dim(); ++i) amplitudes.push_back(complex_to_json(state.amplitudes()[i]));
  return json{{"n", state.num_qubits()}, {"amplitudes", std::move(amplitudes)}};
}

PureState<double> state_from_json(const json& j) {
  const int n = read_qubit_count(j, "n");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
    throw validation_error("state file needs an 'amplitudes' array");
  }
  const auto& entries = j["amplitudes"];
  const auto dim = dim_for_qubits(n);
  if (entries.size() != dim) {
    throw validation_error("state file declares n=" + std::to_string(n) + " but carries " +
                           std::to_string(entries.size()) + " amplitudes");
  }
  VectorC<double> amps(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    amps[static_cast<Eigen::Index>(i)] = complex_from_json(entries[i]);
  }
  return PureState<double>(n, std::move(amps));
}

json operator_to_json(const HermitianOperator<double>& op) {
  if (op.pauli_terms()) {
    json terms = json::array();
    for (const auto& [pauli, coeff] : *op.pauli_terms()) {
      terms.push_back(json{{"string", pauli}, {"coeff", coeff}});
    }
    return json{{"n", op.num_qubits()}, {"pauli", std::move(terms)}};
  }
  json rows = json::array();
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < op.dim(); ++c) row.push_back(complex_to_json(op.matrix()(r, c)));
    rows.push_back(std::move(row));
  }
  return json{{"n", op.num_qubits()}, {"dense", std::move(rows)}};
}

HermitianOperator<double> operator_from_json(const json& j) {
  const int n = read_qubit_count(j, "n");
  const auto dim = dim_for_qubits(n);
  if (j.contains("dense")) {
    const auto& rows = j["dense"];
    if (!rows.is_array() || rows.size() != dim) {
      throw validation_error("dense operator must have " + std::to_string(dim) + " rows");
    }
    MatrixC<double> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
      if (!rows[r].is_array() || rows[r].size() != dim) {
        throw validation_error("dense operator row " + std::to_string(r) + " has the wrong length");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(rows[r][c]);
      }
    }
    return HermitianOperator<double>(n, std::move(m));
  }
  if (j.contains("pauli")) {
    const auto& terms = j["pauli"];
    if (!terms.is_array()) throw validation_error("'pauli' must be an array of terms");
    std::map<std::string, double> pauli_terms;
    for (const auto& term : terms) {
      if (!term.contains("string") || !term.contains("coeff") || !term["string"].is_string() ||
          !term["coeff"].is_number()) {
        throw validation_error("each Pauli term needs a 'string' and a numeric 'coeff'");
      }
      pauli_terms[term["string"].get<std::string>()] += term["coeff"].get<double>();
    }
    return HermitianOperator<double>::from_pauli_terms(n, pauli_terms);
  }
  throw validation_error("operator file needs either a 'dense' matrix or a 'pauli' term list");
}

json chain_to_json(const OscillatorChain<double>& chain) {
  json first_row = json::array();
  for (Eigen::Index c = 0; c < chain.num_sites; ++c) first_row.push_back(chain.coupling(0, c));
  return json{{"N", chain.num_sites}, {"first_row", std::move(first_row)}};
}

OscillatorChain<double> chain_from_json(const json& j) {
  if (!j.contains("N") || !j["N"].is_number_integer()) throw validation_error("chain file needs an integer 'N'");
  if (!j.contains("first_row") || !j["first_row"].is_array()) {
    throw validation_error("chain file needs a 'first_row' array");
  }
  const auto n = j["N"].get<Eigen::Index>();
  const auto& row = j["first_row"];
  if (static_cast<Eigen::Index>(row.size()) != n) {
    throw validation_error("first_row length does not match N");
  }
  std::vector<double> values;
  values.reserve(row.size());
  for (const auto& v : row) {
    if (!v.is_number()) throw validation_error("first_row entries must be numbers");
    values.push_back(v.get<double>());
  }
  return OscillatorChain<double>::circulant(values);
}

json permutation_to_json(const BasisPermutation& perm) {
  json params;
  switch (perm.family()) {
    case PermutationFamily::explicit_table: {
      json image = json::array();
      for (const auto v : perm.table()) image.push_back(v);
      params = json{{"image", std::move(image)}};
      break;
    }
    case PermutationFamily::qubit_relabel: {
      const auto& sigma = std::get<BasisPermutation::RelabelParams>(perm.params()).sigma;
      params = json{{"sigma", sigma}};
      break;
    }
    case PermutationFamily::affine_gf2: {
      const auto& affine = std::get<BasisPermutation::AffineParams>(perm.params());
      json rows = json::array();
      for (const auto row_mask : affine.rows) {
        json bits = json::array();
        for (int k = 0; k < perm.num_qubits(); ++k) bits.push_back((row_mask >> k) & 1u);
        rows.push_back(std::move(bits));
      }
      json offset = json::array();
      for (int k = 0; k < perm.num_qubits(); ++k) offset.push_back((affine.offset >> k) & 1u);
      params = json{{"rows", std::move(rows)}, {"offset", std::move(offset)}};
      break;
    }
    case PermutationFamily::cnot_circuit: {
      const auto& gates = std::get<BasisPermutation::CircuitParams>(perm.params()).gates;
      json list = json::array();
      for (const auto& gate : gates) {
        switch (gate.op) {
          case CircuitGate::Op::cnot:
            list.push_back(json{{"op", "cnot"}, {"control", gate.a}, {"target", gate.b}});
            break;
          case CircuitGate::Op::flip:
            list.push_back(json{{"op", "not"}, {"target", gate.a}});
            break;
          case CircuitGate::Op::swap:
            list.push_back(json{{"op", "swap"}, {"a", gate.a}, {"b", gate.b}});
            break;
        }
      }
      params = json{{"gates", std::move(list)}};
      break;
    }
  }
  return json{{"family", family_name(perm.family())}, {"n", perm.num_qubits()}, {"params", std::move(params)}};
}

BasisPermutation permutation_from_json(const json& j) {
  if (!j.contains("family") || !j.contains("n") || !j.contains("params")) {
    throw validation_error("witness needs 'family', 'n' and 'params'");
  }
  const int n = read_qubit_count(j, "n");
  const auto family = family_from_name(j["family"].get<std::string>());
  const auto& params = j["params"];
  switch (family) {
    case PermutationFamily::explicit_table: {
      std::vector<std::uint32_t> image;
      for (const auto& v : params.at("image")) image.push_back(v.get<std::uint32_t>());
      return BasisPermutation::from_table(n, std::move(image));
    }
    case PermutationFamily::qubit_relabel:
      return BasisPermutation::from_relabel(n, params.at("sigma").get<std::vector<int>>());
    case PermutationFamily::affine_gf2: {
      std::vector<std::uint32_t> rows;
      for (const auto& bits : params.at("rows")) {
        std::uint32_t mask = 0;
        for (std::size_t k = 0; k < bits.size(); ++k) {
          if (bits[k].get<int>()) mask |= std::uint32_t{1} << k;
        }
        rows.push_back(mask);
      }
      std::uint32_t offset = 0;
      const auto& offset_bits = params.at("offset");
      for (std::size_t k = 0; k < offset_bits.size(); ++k) {
        if (offset_bits[k].get<int>()) offset |= std::uint32_t{1} << k;
      }
      return BasisPermutation::from_affine(n, std::move(rows), offset);
    }
    case PermutationFamily::cnot_circuit: {
      std::vector<CircuitGate> gates;
      for (const auto& gate : params.at("gates")) {
        const auto op = gate.at("op").get<std::string>();
        if (op == "cnot") {
          gates.push_back({CircuitGate::Op::cnot, gate.at("control").get<int>(), gate.at("target").get<int>()});
        } else if (op == "not") {
          gates.push_back({CircuitGate::Op::flip, gate.at("target").get<int>()});
        } else if (op == "swap") {
          gates.push_back({CircuitGate::Op::swap, gate.at("a").get<int>(), gate.at("b").get<int>()});
        } else {
          throw validation_error("unknown circuit gate '" + op + "'");
        }
      }
      return BasisPermutation::from_circuit(n, std::move(gates));
    }
  }
  throw validation_error("unreachable witness family");
}

json partition_to_json(const QubitPartition& partition) {
  json blocks = json::array();
  for (const auto& block : partition.blocks()) blocks.push_back(block);
  return blocks;
}

json factorization_to_json(const FactorizationReport<double>& report) {
  json factors = json::array();
  for (const auto& factor : report.factors) factors.push_back(state_to_json(factor));
  return json{{"partition", partition_to_json(report.partition)},
              {"factors", std::move(factors)},
              {"global_phase", complex_to_json(report.global_phase)},
              {"residual", report.residual},
              {"nu", report.nu}};
}

json complexity_report_to_json(const ComplexityReport& report) {
  return json{{"naive_nu", report.naive_nu},
              {"best_c", report.best_c},
              {"witness", permutation_to_json(report.witness)},
              {"family", family_name(report.family)},
              {"certificate", certificate_name(report.certificate)},
              {"candidates_examined", report.candidates_examined}};
}

json qprobe_report_to_json(const QProbeReport<double>& report) {
  json per_n = json::array();
  for (const auto& entry : report.per_n) {
    per_n.push_back(json{{"n", entry.num_qubits}, {"A", entry.copies}, {"success_rate", entry.success_rate}});
  }
  return json{{"Q", report.budget},          {"threshold", report.threshold},
              {"trials", report.trials},     {"seed", report.seed},
              {"per_n", std::move(per_n)},   {"max_workable_n", report.max_workable_n}};
}

void write_trajectory_jsonl(std::ostream& out, const Trajectory<double>& trajectory) {
  for (std::size_t step = 0; step < trajectory.states.size(); ++step) {
    const auto& state = trajectory.states[step];
    std::vector<Eigen::Index> order(static_cast<std::size_t>(state.dim()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double ma = std::abs(state.amplitudes()[a]), mb = std::abs(state.amplitudes()[b]);
      return ma != mb ? ma > mb : a < b;
    });
    json top = json::array();
    for (std::size_t i = 0; i < order.size() && i < 32; ++i) {
      const auto j = order[i];
      if (std::abs(state.amplitudes()[j]) == 0.0) break;
      top.push_back(json::array(
          {static_cast<std::uint64_t>(j), state.amplitudes()[j].real(), state.amplitudes()[j].imag()}));
    }
    const json record{{"t", trajectory.times[step]},
                      {"working_set", trajectory.working_set_sizes[step]},
                      {"discarded", trajectory.cumulative_discarded_weight[step]},
                      {"top", std::move(top)}};
    out << record.dump() << '\n';
  }
}

void write_tomography_csv(std::ostream& out, const ProbabilityEstimate<double>& estimate) {
  out << "index,estimate,half_width\n";
  for (Eigen::Index j = 0; j < estimate.probabilities.size(); ++j) {
    out << j << ',' << json(estimate.probabilities[j]).dump() << ',' << json(estimate.half_width).dump() << '\n';
  }
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error("cannot parse '" + path.string() + "': " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

PureState<double> load_state(const std::filesystem::path& path) { return state_from_json(load_json(path)); }

HermitianOperator<double> load_operator(const std::filesystem::path& path) {
  return operator_from_json(load_json(path));
}

OscillatorChain<double> load_chain(const std::filesystem::path& path) { return chain_from_json(load_json(path)); }

std::string validate_file(const std::filesystem::path& path) {
  const json j = load_json(path);
  std::ostringstream msg;
  if (j.contains("amplitudes")) {
    const auto& amps = j["amplitudes"];
    if (!j.contains("n") || !j["n"].is_number_integer()) return "state file is missing the qubit count 'n'";
    const auto declared = j["n"].get<int>();
    if (declared < 1) return "qubit count must be at least 1";
    if (!is_power_of_two(amps.size())) {
      msg << "amplitude count " << amps.size() << " is not a power of two";
      return msg.str();
    }
    if (amps.size() != dim_for_qubits(declared)) {
      msg << "amplitude count " << amps.size() << " does not match n=" << declared;
      return msg.str();
    }
    double sumsq = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const auto z = complex_from_json(amps[i]);
      sumsq += std::norm(z);
    }
    if (std::abs(sumsq - 1.0) > Tolerances<double>::norm) {
      msg << "state is not normalized: sum of |amplitude|^2 is " << sumsq;
      return msg.str();
    }
    return "ok";
  }
  if (j.contains("dense") || j.contains("pauli")) {
    if (!j.contains("n") || !j["n"].is_number_integer()) return "operator file is missing the qubit count 'n'";
    const auto declared = j["n"].get<int>();
    if (declared < 1) return "qubit count must be at least 1";
    if (j.contains("dense")) {
      const auto& rows = j["dense"];
      if (!is_power_of_two(rows.size())) {
        msg << "dense dimension " << rows.size() << " is not a power of two";
        return msg.str();
      }
      if (rows.size() != dim_for_qubits(declared)) {
        msg << "dense dimension " << rows.size() << " does not match n=" << declared;
        return msg.str();
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.size()) {
          msg << "row " << r << " has length " << rows[r].size() << ", expected " << rows.size();
          return msg.str();
        }
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c <= r; ++c) {
          const auto lower = complex_from_json(rows[r][c]);
          const auto upper = complex_from_json(rows[c][r]);
          if (std::abs(lower - std::conj(upper)) > Tolerances<double>::hermitian) {
            msg << "matrix is not Hermitian at (" << r << ", " << c << ")";
            return msg.str();
          }
        }
      }
      return "ok";
    }
    for (const auto& term : j["pauli"]) {
      if (!term.contains("string") || !term["string"].is_string()) return "Pauli term without a 'string'";
      const auto s = term["string"].get<std::string>();
      if (static_cast<int>(s.size()) != declared) {
        msg << "Pauli string '" << s << "' has length " << s.size() << ", expected " << declared;
        return msg.str();
      }
      for (const char c : s) {
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
          msg << "Pauli string '" << s << "' has a character outside {I, X, Y, Z}";
          return msg.str();
        }
      }
    }
    return "ok";
  }
  if (j.contains("first_row")) {
    if (!j.contains("N") || j["N"].get<Eigen::Index>() != static_cast<Eigen::Index>(j["first_row"].size())) {
      return "chain first_row length does not match N";
    }
    return "ok";
  }
  return "unrecognized file: expected a state, operator, or chain layout";
}

}  // namespace finiteq::io
