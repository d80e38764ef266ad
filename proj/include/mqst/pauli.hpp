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

// Pauli-string decompositions of coherence operators.
//
// Strings are written most-significant qubit first: character n-1-q acts on
// qubit q, and qubit 0 is the least-significant bit of a basis index. So for
// n = 2 the string "ZX" is Z on qubit 1 and X on qubit 0.

#ifndef MQST_PAULI_HPP
#define MQST_PAULI_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mqst/qmath.hpp"

namespace mqst {

struct PauliTerm {
  double coefficient = 0.0;
  std::string string;

  bool operator==(const PauliTerm&) const = default;
};

struct CoherenceObservables {
  /// O+ = |i><j| + |j><i|, so Re x_ij = <O+> / 2.
  std::vector<PauliTerm> real_part;
  /// O- = i (|i><j| - |j><i|), so Im x_ij = <O-> / 2.
  std::vector<PauliTerm> imag_part;
};

/// Expands O+ and O- for 0 <= i < j < 2^n. |i><j| has 2^n Pauli terms with
/// coefficients that are purely real or purely imaginary; the real ones make
/// up O+ and the imaginary ones O-, so each list holds 2^(n-1) terms with
/// coefficient +-2^(1-n). Terms are sorted by string.
CoherenceObservables coherence_observables(std::size_t i, std::size_t j, std::size_t n);

/// Bit masks of one string: qubits carrying X or Y flip the basis index,
/// qubits carrying Y or Z contribute a sign.
struct PauliMasks {
  std::size_t flip = 0;
  std::size_t sign = 0;
  int y_count = 0;
};

PauliMasks pauli_masks(std::string_view pauli);

/// <psi| P |psi>, exact.
double pauli_expectation(const StateVector& psi, std::string_view pauli);

}  // namespace mqst

#endif  // MQST_PAULI_HPP
