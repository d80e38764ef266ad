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

#include "mqst/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mqst {

CoherenceObservables coherence_observables(std::size_t i, std::size_t j, std::size_t n) {
  if (n == 0 || n > 30) throw DimensionError("qubit count must be in [1, 30]");
  const std::size_t dim = std::size_t{1} << n;
  if (i >= dim || j >= dim) throw DimensionError("basis index out of range");
  if (i == j) throw Error("diagonal operator: use Z-string population decomposition instead");
  if (i > j) throw Error("coherence_observables expects i < j");

  // Single-qubit factors of |i_q><j_q|:
  //   |0><0| = (I + Z)/2     |1><1| = (I - Z)/2
  //   |0><1| = (X + iY)/2    |1><0| = (X - iY)/2
  // Each term picks one of the two operators per qubit; `choice` bit q set
  // means Z (equal bits) or Y (differing bits).
  const std::size_t differ = i ^ j;
  const double magnitude = std::ldexp(1.0, -static_cast<int>(n));
  CoherenceObservables out;
  for (std::size_t choice = 0; choice < dim; ++choice) {
    std::string s(n, 'I');
    double sign = 1.0;
    int y_count = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << q;
      char& c = s[n - 1 - q];
      const bool second = (choice & bit) != 0;
      if (differ & bit) {
        c = second ? 'Y' : 'X';
        if (second) {
          ++y_count;
          if (i & bit) sign = -sign;  // |1><0| carries -iY
        }
      } else if (second) {
        c = 'Z';
        if (i & bit) sign = -sign;
      }
    }
    // Coefficient of the string in |i><j| is sign * i^y_count * 2^-n.
    // O+ keeps 2 Re, O- keeps -2 Im.
    switch (y_count % 4) {
      case 0: out.real_part.push_back({2.0 * sign * magnitude, std::move(s)}); break;
      case 1: out.imag_part.push_back({-2.0 * sign * magnitude, std::move(s)}); break;
      case 2: out.real_part.push_back({-2.0 * sign * magnitude, std::move(s)}); break;
      default: out.imag_part.push_back({2.0 * sign * magnitude, std::move(s)}); break;
    }
  }
  auto by_string = [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; };
  std::sort(out.real_part.begin(), out.real_part.end(), by_string);
  std::sort(out.imag_part.begin(), out.imag_part.end(), by_string);
  return out;
}

PauliMasks pauli_masks(std::string_view pauli) {
  const std::size_t n = pauli.size();
  PauliMasks m;
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << q;
    switch (pauli[n - 1 - q]) {
      case 'I': break;
      case 'X': m.flip |= bit; break;
      case 'Y':
        m.flip |= bit;
        m.sign |= bit;
        ++m.y_count;
        break;
      case 'Z': m.sign |= bit; break;
      default: throw Error("Pauli string may only contain I, X, Y, Z");
    }
  }
  return m;
}

double pauli_expectation(const StateVector& psi, std::string_view pauli) {
  if (pauli.size() != psi.qubit_count()) {
    throw DimensionError("Pauli string length differs from qubit count");
  }
  const PauliMasks m = pauli_masks(pauli);
  // P|b> = i^y (-1)^popcount(b & sign) |b ^ flip>   (Y|0> = i|1>, Y|1> = -i|0>)
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex global = kIPowers[m.y_count % 4];
  const ComplexVector& a = psi.amplitudes();
  Complex acc = 0.0;
  for (Eigen::Index b = 0; b < a.size(); ++b) {
    const auto ub = static_cast<std::size_t>(b);
    const double s = (std::popcount(ub & m.sign) & 1) ? -1.0 : 1.0;
    acc += std::conj(a(static_cast<Eigen::Index>(ub ^ m.flip))) * a(b) * s;
  }
  return (global * acc).real();
}

}  // namespace mqst
