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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "finiteq/canonical.hpp"
#include "finiteq/grover.hpp"
#include "helpers.hpp"

using namespace finiteq;
using Cx = std::complex<double>;

namespace {

// Dense Grover operator: inversion about the mean after the oracle sign flip.
MatrixC<double> grover_operator(int n, std::uint64_t marked) {
  const auto dim = static_cast<Eigen::Index>(dim_for_qubits(n));
  MatrixC<double> oracle = MatrixC<double>::Identity(dim, dim);
  oracle(static_cast<Eigen::Index>(marked), static_cast<Eigen::Index>(marked)) = -1.0;
  const MatrixC<double> diffusion =
      (2.0 / static_cast<double>(dim)) * MatrixC<double>::Ones(dim, dim) - MatrixC<double>::Identity(dim, dim);
  return diffusion * oracle;
}

}  // namespace

TEST_CASE("gsa_state amplitudes and boundary parameters") {
  const auto marked_only = gsa_state(GsaParams<double>{2, 1.5707963267948966, 3});
  CHECK(std::abs(marked_only.amplitude(3)) == doctest::Approx(1.0));
  CHECK(std::abs(marked_only.amplitude(0)) < 1e-15);

  const auto unmarked_uniform = gsa_state(GsaParams<double>{2, 0.0, 3});
  CHECK(std::abs(unmarked_uniform.amplitude(3)) < 1e-15);
  for (int j = 0; j < 3; ++j) {
    CHECK(unmarked_uniform.amplitude(j).real() == doctest::Approx(1.0 / std::sqrt(3.0)));
  }

  const auto example = gsa_state(GsaParams<double>{2, 0.7, 3});
  CHECK(example.amplitude(0).real() == doctest::Approx(0.4415).epsilon(1e-3));
  CHECK(example.amplitude(1).real() == doctest::Approx(0.4415).epsilon(1e-3));
  CHECK(example.amplitude(2).real() == doctest::Approx(0.4415).epsilon(1e-3));
  CHECK(example.amplitude(3).real() == doctest::Approx(0.6442).epsilon(1e-3));

  CHECK_THROWS_AS(gsa_state(GsaParams<double>{2, 0.7, 4}), validation_error);
}

TEST_CASE("gsa_state norm is exact for random parameters") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_below(10));
    const double t = rng.uniform01() * 6.283185307179586;
    const std::uint64_t marked = rng.uniform_below(dim_for_qubits(n));
    const auto state = gsa_state(GsaParams<double>{n, t, marked});
    // accumulation over N squared terms: machine precision at this size
    const double bound = 4.0 * static_cast<double>(state.dim()) * 2.220446049250313e-16;
    CHECK(std::abs(state.amplitudes().squaredNorm() - 1.0) < bound);
  }
}

TEST_CASE("grover_iterate matches the closed form and the dense oracle") {
  // k = 0 is the uniform state, i.e. t = theta
  const auto start = grover_iterate(3, 5, 0);
  const double theta3 = std::asin(1.0 / std::sqrt(8.0));
  CHECK((start.amplitudes() - gsa_state(GsaParams<double>{3, theta3, 5}).amplitudes()).cwiseAbs().maxCoeff() <
        1e-14);

  // n=2, k=1 hits the marked index exactly
  const auto hit = grover_iterate(2, 2, 1);
  CHECK(std::abs(hit.amplitude(2)) == doctest::Approx(1.0));

  // n=3, k=2 success probability
  const auto two = grover_iterate(3, 1, 2);
  CHECK(std::norm(two.amplitude(1)) == doctest::Approx(std::pow(std::sin(5 * theta3), 2)));
  CHECK(std::norm(two.amplitude(1)) == doctest::Approx(0.9453).epsilon(1e-3));

  // closed form and dense operator power agree for k <= 50, n <= 6
  for (int n = 1; n <= 6; ++n) {
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(dim_for_qubits(n))));
    const std::uint64_t marked = (n >= 2) ? 3 : 1;
    const auto g = grover_operator(n, marked);
    VectorC<double> vec = PureState<double>::uniform(n).amplitudes();
    for (int k = 0; k <= 50; ++k) {
      const auto iterated = grover_iterate(n, marked, k);
      CHECK((iterated.amplitudes() - vec).cwiseAbs().maxCoeff() < 1e-10);
      const auto closed = gsa_state(GsaParams<double>{n, (2 * k + 1) * theta, marked});
      CHECK((iterated.amplitudes() - closed.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
      vec = (g * vec).eval();
    }
  }
  CHECK_THROWS_AS(grover_iterate(13, 0, 1), guard_error);
}

TEST_CASE("two-value certificate fires exactly on the (N-1, 1) pattern") {
  CHECK(two_value_certificate(gsa_state(GsaParams<double>{3, 0.7, 3})) == 3);
  CHECK(two_value_certificate(gsa_state(GsaParams<double>{2, 0.7, 0})) == 2);

  CHECK(!two_value_certificate(PureState<double>::uniform(3)));
  CHECK(!two_value_certificate(PureState<double>::basis(3, 5)));
  CHECK(!two_value_certificate(gsa_state(GsaParams<double>{3, 1.5707963267948966, 3})));

  // tan t = 1/sqrt(N-1) collapses the two values into one: uniform, nu = 1
  const double degenerate_t = std::atan(1.0 / std::sqrt(7.0));
  const auto degenerate = gsa_state(GsaParams<double>{3, degenerate_t, 2});
  CHECK(!two_value_certificate(degenerate));
  CHECK(naive_state_complexity(degenerate) == 1);

  // single qubit states never certify
  CHECK(!two_value_certificate(PureState<double>::basis(1, 0)));
}

TEST_CASE("two-value certificate is permutation invariant") {
  SplitMix64 rng(55);
  for (const auto& state : {gsa_state(GsaParams<double>{3, 0.7, 3}), gsa_state(GsaParams<double>{2, 1.1, 1}),
                            PureState<double>::uniform(3)}) {
    const auto reference = two_value_certificate(state);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::uint32_t> table(static_cast<std::size_t>(state.dim()));
      for (std::size_t j = 0; j < table.size(); ++j) table[j] = static_cast<std::uint32_t>(j);
      for (std::size_t i = table.size() - 1; i > 0; --i) {
        std::swap(table[i], table[rng.uniform_below(i + 1)]);
      }
      const auto permuted = apply_permutation(state, BasisPermutation::from_table(state.num_qubits(), table));
      CHECK(two_value_certificate(permuted) == reference);
    }
  }
}

TEST_CASE("certificate firings agree with exhaustive search on small registers") {
  SplitMix64 rng(67);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      double t = rng.uniform01() * 1.4 + 0.05;  // stay away from the degeneracies
      const auto state = gsa_state(GsaParams<double>{n, t, rng.uniform_below(dim_for_qubits(n))});
      const auto cert = two_value_certificate(state);
      REQUIRE(cert);
      const auto report = true_state_complexity(state, PermutationFamily::explicit_table);
      CHECK(report.best_c == n);
      CHECK(*cert == n);
    }
  }
}

TEST_CASE("q_probe budgets, determinism, and extremes") {
  const auto tiny = q_probe<double>(1, 2.0 / 3.0, 50, 11);
  for (const auto& entry : tiny.per_n) {
    if (entry.num_qubits >= 2) CHECK(entry.copies == 0);
  }
  CHECK(tiny.per_n[0].copies == 1);
  CHECK((tiny.max_workable_n == 0 || tiny.max_workable_n == 1));

  // large budget saturates the scan
  const auto rich = q_probe<double>(1000000, 2.0 / 3.0, 5, 23);
  CHECK(rich.max_workable_n == 12);
  for (const auto& entry : rich.per_n) {
    CHECK(entry.copies == static_cast<std::uint64_t>(1000000 / entry.num_qubits));
    if (entry.num_qubits >= 2) CHECK(entry.success_rate >= 0.8);
  }

  // reruns and worker counts give identical reports
  const auto a = q_probe<double>(40, 2.0 / 3.0, 200, 7, 1);
  const auto b = q_probe<double>(40, 2.0 / 3.0, 200, 7, 1);
  const auto c = q_probe<double>(40, 2.0 / 3.0, 200, 7, 4);
  CHECK(a.max_workable_n == b.max_workable_n);
  CHECK(a.max_workable_n == c.max_workable_n);
  for (std::size_t i = 0; i < a.per_n.size(); ++i) {
    CHECK(a.per_n[i].success_rate == b.per_n[i].success_rate);
    CHECK(a.per_n[i].success_rate == c.per_n[i].success_rate);
  }

  CHECK_THROWS_AS(q_probe<double>(0, 0.5, 10, 1), validation_error);
  CHECK_THROWS_AS(q_probe<double>(10, 1.5, 10, 1), validation_error);
  CHECK_THROWS_AS(q_probe<double>(10, 0.5, 0, 1), validation_error);
}

TEST_CASE("q_probe is monotone over the budget grid") {
  int previous = -1;
  for (const std::int64_t budget : {1, 5, 10, 20, 40, 80}) {
    const auto report = q_probe<double>(budget, 2.0 / 3.0, 200, 7);
    CHECK(report.max_workable_n >= previous);
    previous = report.max_workable_n;
  }
}
