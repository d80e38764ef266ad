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

#include "mqst/simulate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "mqst/parallel.hpp"
#include "mqst/pauli.hpp"

namespace mqst {

namespace {

using Mat2 = std::array<Complex, 4>;  // row-major

struct GateInfo {
  const char* name;
  std::size_t arity;
  bool takes_angle;
};

constexpr std::array<GateInfo, 13> kGates{{
    {"x", 1, false},
    {"y", 1, false},
    {"z", 1, false},
    {"h", 1, false},
    {"s", 1, false},
    {"sdg", 1, false},
    {"t", 1, false},
    {"rx", 1, true},
    {"ry", 1, true},
    {"rz", 1, true},
    {"cx", 2, false},
    {"cz", 2, false},
    {"swap", 2, false},
}};

const GateInfo* find_gate(const std::string& name) {
  for (const auto& g : kGates) {
    if (name == g.name) return &g;
  }
  return nullptr;
}

Mat2 single_qubit_matrix(const Gate& g) {
  const Complex i(0.0, 1.0);
  const double r = std::numbers::sqrt2 / 2.0;
  if (g.name == "x") return {0.0, 1.0, 1.0, 0.0};
  if (g.name == "y") return {0.0, -i, i, 0.0};
  if (g.name == "z") return {1.0, 0.0, 0.0, -1.0};
  if (g.name == "h") return {r, r, r, -r};
  if (g.name == "s") return {1.0, 0.0, 0.0, i};
  if (g.name == "sdg") return {1.0, 0.0, 0.0, -i};
  if (g.name == "t") return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
  const double half = *g.angle / 2.0;
  const double c = std::cos(half);
  const double s = std::sin(half);
  if (g.name == "rx") return {c, -i * s, -i * s, c};
  if (g.name == "ry") return {c, -s, s, c};
  if (g.name == "rz") return {std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half)};
  throw CircuitError("unknown gate '" + g.name + "'");
}

void apply_single(ComplexVector& psi, std::size_t q, const Mat2& u) {
  const auto bit = static_cast<Eigen::Index>(std::size_t{1} << q);
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    if (b & bit) continue;
    const Complex a0 = psi(b);
    const Complex a1 = psi(b | bit);
    psi(b) = u[0] * a0 + u[1] * a1;
    psi(b | bit) = u[2] * a0 + u[3] * a1;
  }
}

void apply_gate(ComplexVector& psi, const Gate& g) {
  if (g.targets.size() == 1) {
    apply_single(psi, g.targets[0], single_qubit_matrix(g));
    return;
  }
  const auto b0 = static_cast<Eigen::Index>(std::size_t{1} << g.targets[0]);
  const auto b1 = static_cast<Eigen::Index>(std::size_t{1} << g.targets[1]);
  for (Eigen::Index b = 0; b < psi.size(); ++b) {
    if (g.name == "cx") {
      if ((b & b0) && !(b & b1)) std::swap(psi(b), psi(b | b1));
    } else if (g.name == "cz") {
      if ((b & b0) && (b & b1)) psi(b) = -psi(b);
    } else {  // swap
      if ((b & b0) && !(b & b1)) std::swap(psi(b), psi((b & ~b0) | b1));
    }
  }
}

// Uniform double in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

std::uint64_t pauli_code(const std::string& s) {
  std::uint64_t code = 0;
  for (char c : s) {
    code *= 4;
    switch (c) {
      case 'X': code += 1; break;
      case 'Y': code += 2; break;
      case 'Z': code += 3; break;
      default: break;
    }
  }
  return code;
}

// Outcome counts of `shots` computational-basis draws.
std::vector<std::uint64_t> sample_counts(const ComplexVector& psi, std::uint64_t shots,
                                         std::uint64_t seed) {
  const auto dim = static_cast<std::size_t>(psi.size());
  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    acc += std::norm(psi(static_cast<Eigen::Index>(b)));
    cdf[b] = acc;
  }
  std::vector<std::uint64_t> counts(dim, 0);
  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < shots; ++k) {
    const double u = uniform01(rng) * acc;
    // upper_bound skips zero-probability outcomes; only u == acc (rounding)
    // falls off the end, where the last populated outcome is taken.
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::lower_bound(cdf.begin(), cdf.end(), acc);
    ++counts[static_cast<std::size_t>(it - cdf.begin())];
  }
  return counts;
}

double sampled_pauli(const ComplexVector& psi, std::size_t n, const std::string& pauli,
                     std::uint64_t shots, std::uint64_t seed) {
  ComplexVector rotated = psi;
  std::size_t support = 0;
  const double r = std::numbers::sqrt2 / 2.0;
  const Mat2 h{r, r, r, -r};
  const Mat2 sdg{1.0, 0.0, 0.0, Complex(0.0, -1.0)};
  for (std::size_t q = 0; q < n; ++q) {
    const char c = pauli[n - 1 - q];
    if (c == 'I') continue;
    support |= std::size_t{1} << q;
    if (c == 'Y') apply_single(rotated, q, sdg);
    if (c == 'X' || c == 'Y') apply_single(rotated, q, h);
  }
  if (support == 0) return 1.0;
  const std::vector<std::uint64_t> counts = sample_counts(rotated, shots, seed);
  std::int64_t total = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const auto c = static_cast<std::int64_t>(counts[b]);
    total += (std::popcount(b & support) & 1) ? -c : c;
  }
  return static_cast<double>(total) / static_cast<double>(shots);
}

std::vector<std::pair<std::size_t, std::size_t>> requested_pairs(std::size_t dim,
                                                                 const MeasureSpec& which) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (which.kind == MeasureSpec::Kind::kAll) {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
    }
  } else if (which.kind == MeasureSpec::Kind::kFirstRow) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (j == which.reference) continue;
      pairs.emplace_back(std::min(j, which.reference), std::max(j, which.reference));
    }
  }
  return pairs;
}

void check_reference(std::size_t dim, const MeasureSpec& which) {
  if (which.kind == MeasureSpec::Kind::kFirstRow && which.reference >= dim) {
    throw DimensionError("reference index out of range");
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void Circuit::validate() const {
  if (qubit_count == 0 || qubit_count > kMaxCircuitQubits) {
    throw CircuitError("circuit qubit count must be in [1, 12]");
  }
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const Gate& g = gates[k];
    std::ostringstream where;
    where << "gate " << k << " ('" << g.name << "')";
    const GateInfo* info = find_gate(g.name);
    if (!info) throw CircuitError(where.str() + ": unknown gate");
    if (g.targets.size() != info->arity) {
      throw CircuitError(where.str() + ": expects " + std::to_string(info->arity) + " target(s)");
    }
    for (std::size_t t : g.targets) {
      if (t >= qubit_count) throw CircuitError(where.str() + ": target out of range");
    }
    if (info->arity == 2 && g.targets[0] == g.targets[1]) {
      throw CircuitError(where.str() + ": targets must differ");
    }
    if (info->takes_angle && !g.angle) throw CircuitError(where.str() + ": missing angle");
    if (!info->takes_angle && g.angle) throw CircuitError(where.str() + ": takes no angle");
    if (g.angle && !std::isfinite(*g.angle)) throw CircuitError(where.str() + ": bad angle");
  }
}

StateVector run(const Circuit& circuit) {
  circuit.validate();
  ComplexVector psi = ComplexVector::Zero(std::size_t{1} << circuit.qubit_count);
  psi(0) = 1.0;
  for (const Gate& g : circuit.gates) apply_gate(psi, g);
  return StateVector(circuit.qubit_count, std::move(psi));
}

MeasurementSet exact_measurements(const StateVector& psi, const MeasureSpec& which) {
  const std::size_t dim = psi.dimension();
  check_reference(dim, which);
  MeasurementSet ms;
  ms.dimension = dim;
  ms.provenance = Provenance::exact();
  ms.probabilities.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (which.kind != MeasureSpec::Kind::kFirstRow || i == which.reference) {
      ms.probabilities[i] = std::norm(psi[i]);
    }
  }
  for (const auto& [i, j] : requested_pairs(dim, which)) {
    ms.coherences.push_back({i, j, psi[i] * std::conj(psi[j])});
  }
  return ms;
}

MeasurementSet sampled_measurements(const StateVector& psi, const MeasureSpec& which,
                                    std::uint64_t shots, std::uint64_t seed) {
  const std::size_t n = psi.qubit_count();
  const std::size_t dim = psi.dimension();
  if (n > kMaxSampledQubits) throw DimensionError("sampled measurements support n <= 5");
  if (shots == 0) throw Error("shots must be at least 1");
  check_reference(dim, which);

  MeasurementSet ms;
  ms.dimension = dim;
  ms.provenance = Provenance::sampled(shots, seed);
  ms.probabilities.resize(dim);
  const std::vector<std::uint64_t> counts =
      sample_counts(psi.amplitudes(), shots, stream_seed(seed, 0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (which.kind != MeasureSpec::Kind::kFirstRow || i == which.reference) {
      ms.probabilities[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    }
  }

  const auto pairs = requested_pairs(dim, which);
  std::vector<CoherenceObservables> observables;
  observables.reserve(pairs.size());
  std::set<std::string> strings;
  for (const auto& [i, j] : pairs) {
    observables.push_back(coherence_observables(i, j, n));
    for (const auto& t : observables.back().real_part) strings.insert(t.string);
    for (const auto& t : observables.back().imag_part) strings.insert(t.string);
  }
  const std::vector<std::string> unique(strings.begin(), strings.end());
  std::vector<double> estimate(unique.size());
  parallel_for(unique.size(), [&](std::size_t k) {
    estimate[k] = sampled_pauli(psi.amplitudes(), n, unique[k], shots,
                                stream_seed(seed, pauli_code(unique[k]) + 1));
  });
  std::map<std::string, double> lookup;
  for (std::size_t k = 0; k < unique.size(); ++k) lookup.emplace(unique[k], estimate[k]);

  for (std::size_t p = 0; p < pairs.size(); ++p) {
    double re = 0.0, im = 0.0;
    for (const auto& t : observables[p].real_part) re += t.coefficient * lookup.at(t.string);
    for (const auto& t : observables[p].imag_part) im += t.coefficient * lookup.at(t.string);
    ms.coherences.push_back({pairs[p].first, pairs[p].second, Complex(re / 2.0, im / 2.0)});
  }
  return ms;
}

Circuit random_circuit(std::size_t n, std::size_t depth, std::uint64_t seed) {
  if (n == 0 || n > kMaxCircuitQubits) throw CircuitError("circuit qubit count must be in [1, 12]");
  if (depth == 0) throw CircuitError("depth must be at least 1");
  static const char* const kAxes[3] = {"rx", "ry", "rz"};
  std::mt19937_64 rng(splitmix64(seed));
  Circuit c;
  c.qubit_count = n;
  for (std::size_t d = 0; d < depth; ++d) {
    for (std::size_t q = 0; q < n; ++q) {
      const auto axis = static_cast<std::size_t>(uniform01(rng) * 3.0);
      const double angle = uniform01(rng) * 2.0 * std::numbers::pi;
      c.gates.push_back({kAxes[std::min<std::size_t>(axis, 2)], {q}, angle});
    }
    for (std::size_t q = d % 2; q + 1 < n; q += 2) c.gates.push_back({"cx", {q, q + 1}, {}});
  }
  return c;
}

}  // namespace mqst
