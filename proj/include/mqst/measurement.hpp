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

// Mean measurements of a state: populations x_ii and coherences x_ij.
//
// x_ij is the (i, j) entry of rho, i.e. the expectation of |j><i|. For a pure
// state with amplitudes c this is c_i conj(c_j).

#ifndef MQST_MEASUREMENT_HPP
#define MQST_MEASUREMENT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mqst/qmath.hpp"

namespace mqst {

struct Coherence {
  std::size_t i = 0;
  std::size_t j = 0;  // i < j
  Complex value;
};

struct Provenance {
  enum class Kind { kExact, kSampled };
  Kind kind = Kind::kExact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static Provenance exact() { return {}; }
  static Provenance sampled(std::uint64_t shots, std::uint64_t seed) {
    return {Kind::kSampled, shots, seed};
  }
};

class InvalidMeasurementError : public Error {
 public:
  using Error::Error;
};

struct MeasurementSet {
  std::size_t dimension = 0;
  /// Empty when no population was measured; otherwise exactly `dimension`
  /// entries, with nullopt for the unmeasured ones.
  std::vector<std::optional<double>> probabilities;
  std::vector<Coherence> coherences;
  Provenance provenance;

  bool has_all_probabilities() const;

  /// Indices whose population is present.
  std::vector<std::size_t> known_populations() const;

  /// x_ij for any i != j (conjugating stored (j, i) entries), if measured.
  std::optional<Complex> coherence(std::size_t i, std::size_t j) const;

  /// Checks index ranges, ordering, duplicates and, when every population is
  /// present, that they sum to 1 (1e-6 exact, 5/sqrt(shots) sampled).
  /// Throws InvalidMeasurementError.
  void validate() const;
};

}  // namespace mqst

#endif  // MQST_MEASUREMENT_HPP
