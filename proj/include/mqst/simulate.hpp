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

// Statevector simulator plus exact and shot-sampled measurement sets.
//
// Qubit 0 is the least-significant bit of a basis index. Gates follow the
// usual matrices, Rx(t) = exp(-i t X / 2) and so on; cx takes
// targets = [control, target].

#ifndef MQST_SIMULATE_HPP
#define MQST_SIMULATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqst/measurement.hpp"
#include "mqst/qmath.hpp"

namespace mqst {

inline constexpr std::size_t kMaxCircuitQubits = 12;
inline constexpr std::size_t kMaxSampledQubits = 5;

class CircuitError : public Error {
 public:
  using Error::Error;
};

struct Gate {
  std::string name;
  std::vector<std::size_t> targets;
  std::optional<double> angle;

  bool operator==(const Gate&) const = default;
};

struct Circuit {
  std::size_t qubit_count = 1;
  std::vector<Gate> gates;

  /// Throws CircuitError on an unknown gate, wrong arity, a missing or
  /// spurious angle, a repeated target or an out-of-range qubit.
  void validate() const;

  bool operator==(const Circuit&) const = default;
};

/// Applies the gates in order to |0...0>.
StateVector run(const Circuit& circuit);

/// Which quantities a measurement set carries.
struct MeasureSpec {
  enum class Kind { kAll, kProbabilities, kFirstRow };
  Kind kind = Kind::kAll;
  /// Reference row for kFirstRow.
  std::size_t reference = 0;

  static MeasureSpec all() { return {Kind::kAll, 0}; }
  static MeasureSpec probabilities() { return {Kind::kProbabilities, 0}; }
  static MeasureSpec first_row(std::size_t r) { return {Kind::kFirstRow, r}; }
};

/// kAll: every population and every coherence i < j.
/// kProbabilities: every population.
/// kFirstRow: x_rr and x_rj for all j != r (stored as (min, max) pairs).
MeasurementSet exact_measurements(const StateVector& psi, const MeasureSpec& which);

/// Shot-sampled counterpart of exact_measurements (n <= kMaxSampledQubits).
///
/// Populations come from `shots` computational-basis draws. Each Pauli
/// string appearing in a requested coherence is estimated once from its own
/// `shots` draws after rotating into its eigenbasis, and shared between all
/// coherences that use it. Streams are seeded independently of evaluation
/// order: stream 0 feeds the populations and a string with base-4 code c
/// (I=0, X=1, Y=2, Z=3, most significant character first) uses stream c + 1;
/// stream k is seeded with splitmix64(seed + (k + 1) * 0x9e3779b97f4a7c15).
MeasurementSet sampled_measurements(const StateVector& psi, const MeasureSpec& which,
                                    std::uint64_t shots, std::uint64_t seed);

/// Random layered circuit. Layer d applies rx, ry or rz (chosen uniformly,
/// angle uniform in [0, 2 pi)) to every qubit in order, then cx(q, q + 1)
/// for q = d % 2, d % 2 + 2, ... while q + 1 < n. Randomness comes from
/// mt19937_64 seeded with splitmix64(seed); uniform doubles use the top 53
/// bits of each draw.
Circuit random_circuit(std::size_t n, std::size_t depth, std::uint64_t seed);

/// splitmix64 finalizer used for seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mqst

#endif  // MQST_SIMULATE_HPP
