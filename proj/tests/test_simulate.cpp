// Copyright 2026 The maxent-qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mqst/pauli.hpp"
#include "mqst/reconstruct.hpp"
#include "mqst/simulate.hpp"
#include "oracles.hpp"

using namespace mqst;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

const double kR = std::numbers::sqrt2 / 2.0;

Circuit bell_circuit() { return {2, {{"h", {0}, {}}, {"cx", {0, 1}, {}}}}; }

// Dense matrix of a gate on n qubits, built by Kronecker products.
ComplexMatrix dense_gate(const Gate& g, std::size_t n) {
  const Complex i(0.0, 1.0);
  ComplexMatrix u(2, 2);
  const double t = g.angle.value_or(0.0);
  if (g.name == "x") u << 0, 1, 1, 0;
  if (g.name == "y") u << 0, -i, i, 0;
  if (g.name == "z") u << 1, 0, 0, -1;
  if (g.name == "h") u << kR, kR, kR, -kR;
  if (g.name == "s") u << 1, 0, 0, i;
  if (g.name == "sdg") u << 1, 0, 0, -i;
  if (g.name == "t") u << 1, 0, 0, std::exp(i * std::numbers::pi / 4.0);
  if (g.name == "rx" || g.name == "ry" || g.name == "rz") {
    const char axis = static_cast<char>(std::toupper(g.name[1]));
    u = (-i * t / 2.0 * oracle::pauli(axis)).exp();
  }
  auto embed = [&](const ComplexMatrix& one, std::size_t q) {
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    for (std::size_t k = n; k-- > 0;) m = oracle::kron(m, k == q ? one : oracle::pauli('I'));
    return m;
  };
  if (g.targets.size() == 1) return embed(u, g.targets[0]);
  const ComplexMatrix p0 = (oracle::pauli('I') + oracle::pauli('Z')) / 2.0;
  const ComplexMatrix p1 = (oracle::pauli('I') - oracle::pauli('Z')) / 2.0;
  const std::size_t a = g.targets[0], b = g.targets[1];
  if (g.name == "cx") return embed(p0, a) + embed(p1, a) * embed(oracle::pauli('X'), b);
  if (g.name == "cz") return embed(p0, a) + embed(p1, a) * embed(oracle::pauli('Z'), b);
  // swap = (II + XX + YY + ZZ) / 2
  ComplexMatrix sw = ComplexMatrix::Identity(1 << n, 1 << n);
  for (char c : {'X', 'Y', 'Z'}) sw += embed(oracle::pauli(c), a) * embed(oracle::pauli(c), b);
  return sw / 2.0;
}

}  // namespace

TEST_CASE("run: single-gate and Bell examples") {
  const StateVector h = run({1, {{"h", {0}, {}}}});
  CHECK(std::abs(h[0] - kR) < 1e-15);
  CHECK(std::abs(h[1] - kR) < 1e-15);

  const StateVector bell = run(bell_circuit());
  CHECK(std::abs(bell[0] - kR) < 1e-15);
  CHECK(std::abs(bell[3] - kR) < 1e-15);
  CHECK(std::abs(bell[1]) == 0.0);
  CHECK(std::abs(bell[2]) == 0.0);

  const StateVector rx = run({1, {{"rx", {0}, std::numbers::pi}}});
  CHECK(std::abs(rx[0]) < 1e-15);
  CHECK(std::abs(rx[1] - Complex(0.0, -1.0)) < 1e-15);
}

TEST_CASE("qubit 0 is the least-significant bit") {
  const StateVector x0 = run({3, {{"x", {0}, {}}}});
  CHECK(std::abs(x0[1] - 1.0) < 1e-15);
  const StateVector x2 = run({3, {{"x", {2}, {}}}});
  CHECK(std::abs(x2[4] - 1.0) < 1e-15);
}

TEST_CASE("every gate matches its dense matrix and preserves the norm") {
  std::mt19937_64 rng(2);
  const std::size_t n = 3;
  const std::vector<Gate> gates = {
      {"x", {1}, {}},        {"y", {2}, {}},        {"z", {0}, {}},
      {"h", {1}, {}},        {"s", {0}, {}},        {"sdg", {2}, {}},
      {"t", {1}, {}},        {"rx", {0}, 0.7},      {"ry", {2}, -1.3},
      {"rz", {1}, 2.9},      {"cx", {2, 0}, {}},    {"cx", {0, 1}, {}},
      {"cz", {1, 2}, {}},    {"swap", {0, 2}, {}},
  };
  for (const Gate& g : gates) {
    const ComplexVector start = oracle::random_state(n, rng);
    const ComplexVector expected = dense_gate(g, n) * start;
    // run() starts from |0...0>: apply the gate to every basis state (reached
    // with x gates) and combine by linearity.
    ComplexVector got = ComplexVector::Zero(1 << n);
    for (std::size_t b = 0; b < (1u << n); ++b) {
      Circuit prep{n, {}};
      for (std::size_t q = 0; q < n; ++q) {
        if (b & (1u << q)) prep.gates.push_back({"x", {q}, {}});
      }
      prep.gates.push_back(g);
      got += start(static_cast<Eigen::Index>(b)) * run(prep).amplitudes();
    }
    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THAT(got.norm(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("deep random circuits keep unit norm") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const StateVector s = run(random_circuit(8, 40, seed));
    CHECK_THAT(s.amplitudes().squaredNorm(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("circuit validation") {
  CHECK_THROWS_WITH(run({1, {{"foo", {0}, {}}}}), ContainsSubstring("unknown gate"));
  CHECK_THROWS_AS(run({1, {{"cx", {0}, {}}}}), CircuitError);
  CHECK_THROWS_AS(run({2, {{"cx", {1, 1}, {}}}}), CircuitError);
  CHECK_THROWS_AS(run({1, {{"rx", {0}, {}}}}), CircuitError);
  CHECK_THROWS_AS(run({1, {{"h", {0}, 0.5}}}), CircuitError);
  CHECK_THROWS_AS(run({1, {{"h", {1}, {}}}}), CircuitError);
  CHECK_THROWS_AS(run({13, {}}), CircuitError);
}

TEST_CASE("exact measurement examples") {
  const MeasurementSet bell = exact_measurements(run(bell_circuit()), MeasureSpec::all());
  CHECK(bell.has_all_probabilities());
  CHECK_THAT(*bell.probabilities[0], WithinAbs(0.5, 1e-15));
  CHECK_THAT(*bell.probabilities[3], WithinAbs(0.5, 1e-15));
  CHECK(std::abs(*bell.coherence(0, 3) - 0.5) < 1e-15);
  CHECK(std::abs(*bell.coherence(0, 1)) == 0.0);
  CHECK(bell.coherences.size() == 6);

  const MeasurementSet zero = exact_measurements(StateVector::basis(2, 0), MeasureSpec::all());
  CHECK(*zero.probabilities[0] == 1.0);
  for (const auto& c : zero.coherences) CHECK(std::abs(c.value) == 0.0);

  ComplexVector v = ComplexVector::Zero(4);
  v(0) = kR;
  v(3) = Complex(0.0, kR);
  const MeasurementSet phase = exact_measurements(StateVector(2, v), MeasureSpec::first_row(0));
  CHECK(std::abs(*phase.coherence(0, 3) - Complex(0.0, -0.5)) < 1e-15);
  CHECK(phase.known_populations() == std::vector<std::size_t>{0});
  CHECK(phase.coherences.size() == 3);

  const MeasurementSet row2 = exact_measurements(StateVector(2, v), MeasureSpec::first_row(2));
  for (const auto& c : row2.coherences) CHECK((c.i == 2 || c.j == 2));
  CHECK(row2.provenance.kind == Provenance::Kind::kExact);
}

TEST_CASE("coherence_observables examples") {
  const CoherenceObservables one = coherence_observables(0, 1, 1);
  CHECK(one.real_part == std::vector<PauliTerm>{{1.0, "X"}});
  CHECK(one.imag_part == std::vector<PauliTerm>{{-1.0, "Y"}});

  const CoherenceObservables corner = coherence_observables(0, 3, 2);
  CHECK(corner.real_part == std::vector<PauliTerm>{{0.5, "XX"}, {-0.5, "YY"}});

  const CoherenceObservables low = coherence_observables(0, 1, 2);
  CHECK(low.real_part == std::vector<PauliTerm>{{0.5, "IX"}, {0.5, "ZX"}});
  CHECK(low.imag_part == std::vector<PauliTerm>{{-0.5, "IY"}, {-0.5, "ZY"}});

  CHECK_THROWS_WITH(coherence_observables(2, 2, 2), ContainsSubstring("Z-string population"));
}

TEST_CASE("coherence_observables rebuild the dense operators for n <= 4") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) {
        const CoherenceObservables o = coherence_observables(i, j, n);
        const ComplexMatrix ij = oracle::ket_bra(i, j, dim), ji = oracle::ket_bra(j, i, dim);
        const ComplexMatrix plus = ij + ji;
        const ComplexMatrix minus = Complex(0.0, 1.0) * (ij - ji);
        CHECK(oracle::max_abs_diff(oracle::rebuild(o.real_part, n), plus) < 1e-12);
        CHECK(oracle::max_abs_diff(oracle::rebuild(o.imag_part, n), minus) < 1e-12);
        CHECK(o.real_part.size() + o.imag_part.size() == dim);
        for (const auto& t : o.real_part) CHECK(t.coefficient != 0.0);
      }
    }
  }
}

TEST_CASE("pauli_expectation matches the dense expectation") {
  std::mt19937_64 rng(6);
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const ComplexVector psi = oracle::random_state(n, rng);
    std::string s;
    for (std::size_t q = 0; q < n; ++q) s += letters[rng() % 4];
    const Complex dense = psi.dot(oracle::pauli_string(s) * psi);
    CHECK_THAT(pauli_expectation(StateVector(n, psi), s), WithinAbs(dense.real(), 1e-12));
  }
  CHECK_THROWS(pauli_expectation(StateVector::basis(2, 0), "X"));
  CHECK_THROWS(pauli_expectation(StateVector::basis(1, 0), "Q"));
}

TEST_CASE("Re/Im of coherences follow from the Pauli expectations") {
  std::mt19937_64 rng(10);
  const std::size_t n = 3;
  const StateVector psi(n, oracle::random_state(n, rng));
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = i + 1; j < 8; ++j) {
      const CoherenceObservables o = coherence_observables(i, j, n);
      double re = 0.0, im = 0.0;
      for (const auto& t : o.real_part) re += t.coefficient * pauli_expectation(psi, t.string);
      for (const auto& t : o.imag_part) im += t.coefficient * pauli_expectation(psi, t.string);
      const Complex x = psi[i] * std::conj(psi[j]);
      CHECK_THAT(re / 2.0, WithinAbs(x.real(), 1e-12));
      CHECK_THAT(im / 2.0, WithinAbs(x.imag(), 1e-12));
    }
  }
}

TEST_CASE("sampled measurements: deterministic outcomes and determinism") {
  const MeasurementSet zero = sampled_measurements(StateVector::basis(1, 0), MeasureSpec::all(), 17, 3);
  CHECK(*zero.probabilities[0] == 1.0);
  CHECK(zero.provenance.kind == Provenance::Kind::kSampled);
  CHECK(zero.provenance.shots == 17);

  const StateVector bell = run(bell_circuit());
  const MeasurementSet a = sampled_measurements(bell, MeasureSpec::all(), 1000, 42);
  const MeasurementSet b = sampled_measurements(bell, MeasureSpec::all(), 1000, 42);
  const MeasurementSet c = sampled_measurements(bell, MeasureSpec::all(), 1000, 43);
  bool same = true, differs = false;
  for (std::size_t k = 0; k < a.coherences.size(); ++k) {
    same = same && a.coherences[k].value == b.coherences[k].value;
    differs = differs || a.coherences[k].value != c.coherences[k].value;
  }
  CHECK(same);
  CHECK(differs);
  CHECK_THROWS(sampled_measurements(run(random_circuit(6, 1, 0)), MeasureSpec::all(), 10, 0));
}

TEST_CASE("sampled Bell coherence is close to exact") {
  const StateVector bell = run(bell_circuit());
  const MeasurementSet few = sampled_measurements(bell, MeasureSpec::all(), 8192, 42);
  CHECK(std::abs(few.coherence(0, 3)->real() - 0.5) < 0.05);

  const MeasurementSet many = sampled_measurements(bell, MeasureSpec::all(), 1000000, 7);
  const MeasurementSet exact = exact_measurements(bell, MeasureSpec::all());
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(*many.probabilities[k] - *exact.probabilities[k]) < 5e-3);
  }
  for (std::size_t k = 0; k < many.coherences.size(); ++k) {
    CHECK(std::abs(many.coherences[k].value - exact.coherences[k].value) < 5e-3);
  }
}

TEST_CASE("sampling error falls like 1/sqrt(shots)") {
  const StateVector psi = run({2, {{"ry", {0}, 1.1}, {"cx", {0, 1}, {}}, {"rx", {1}, 0.6}}});
  const MeasurementSet exact = exact_measurements(psi, MeasureSpec::all());
  std::vector<double> xs, ys;
  for (int p = 8; p <= 16; p += 2) {
    const std::uint64_t shots = std::uint64_t{1} << p;
    double err = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const MeasurementSet s = sampled_measurements(psi, MeasureSpec::all(), shots, seed);
      for (std::size_t k = 0; k < 4; ++k) {
        err += std::abs(*s.probabilities[k] - *exact.probabilities[k]);
        ++count;
      }
      for (std::size_t k = 0; k < s.coherences.size(); ++k) {
        err += std::abs(s.coherences[k].value - exact.coherences[k].value);
        ++count;
      }
    }
    xs.push_back(std::log(static_cast<double>(shots)));
    ys.push_back(std::log(err / count));
  }
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) mx += xs[k] / xs.size(), my += ys[k] / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  const double slope = sxy / sxx;
  CHECK(slope >= -0.65);
  CHECK(slope <= -0.35);
}

TEST_CASE("random_circuit is reproducible and follows its layout") {
  CHECK(random_circuit(2, 3, 7) == random_circuit(2, 3, 7));
  CHECK_FALSE(random_circuit(2, 3, 7) == random_circuit(2, 3, 8));
  for (const Gate& g : random_circuit(1, 5, 99).gates) CHECK(g.targets.size() == 1);
  const Circuit c = random_circuit(4, 2, 1);
  // layer 0: 4 rotations + cx(0,1), cx(2,3); layer 1: 4 rotations + cx(1,2)
  CHECK(c.gates.size() == 11);
  CHECK(c.gates[4] == Gate{"cx", {0, 1}, {}});
  CHECK(c.gates[10] == Gate{"cx", {1, 2}, {}});
  for (const Gate& g : c.gates) {
    if (g.angle) CHECK((*g.angle >= 0.0 && *g.angle < 2.0 * std::numbers::pi));
  }
}

TEST_CASE("random 6-qubit circuit state reconstructs exactly") {
  const StateVector psi = run(random_circuit(6, 10, 2024));
  std::size_t r = 0;
  for (std::size_t k = 1; k < psi.dimension(); ++k) {
    if (std::norm(psi[k]) > std::norm(psi[r])) r = k;
  }
  const Reconstruction rec = reconstruct_complex(exact_measurements(psi, MeasureSpec::first_row(r)));
  CHECK(trace_distance(rec.rho, psi.density()) < 1e-6);
  CHECK(fidelity_pure(psi, rec.rho) > 1.0 - 1e-6);
}
