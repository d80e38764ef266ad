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

#include "mqst/measurement.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace mqst {

bool MeasurementSet::has_all_probabilities() const {
  if (probabilities.size() != dimension) return false;
  for (const auto& p : probabilities) {
    if (!p) return false;
  }
  return true;
}

std::vector<std::size_t> MeasurementSet::known_populations() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k]) out.push_back(k);
  }
  return out;
}

std::optional<Complex> MeasurementSet::coherence(std::size_t i, std::size_t j) const {
  const bool swapped = i > j;
  const std::size_t lo = swapped ? j : i;
  const std::size_t hi = swapped ? i : j;
  for (const auto& c : coherences) {
    if (c.i == lo && c.j == hi) return swapped ? std::conj(c.value) : c.value;
  }
  return std::nullopt;
}

void MeasurementSet::validate() const {
  auto fail = [](const std::string& what) { throw InvalidMeasurementError(what); };
  if (dimension == 0) fail("measurement set dimension must be positive");
  if (!probabilities.empty() && probabilities.size() != dimension) {
    fail("probabilities must list exactly `dimension` entries");
  }
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] && !(std::isfinite(*probabilities[k]) && *probabilities[k] >= 0.0)) {
      std::ostringstream msg;
      msg << "probability " << k << " is not a finite non-negative number";
      fail(msg.str());
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& c : coherences) {
    std::ostringstream where;
    where << "coherence (" << c.i << ", " << c.j << ")";
    if (!(c.i < c.j && c.j < dimension)) fail(where.str() + ": indices must satisfy i < j < N");
    if (!seen.insert({c.i, c.j}).second) fail(where.str() + ": duplicate entry");
    if (!(std::isfinite(c.value.real()) && std::isfinite(c.value.imag()))) {
      fail(where.str() + ": value is not finite");
    }
  }
  if (provenance.kind == Provenance::Kind::kSampled && provenance.shots == 0) {
    fail("sampled provenance needs shots >= 1");
  }
  if (has_all_probabilities()) {
    double sum = 0.0;
    for (const auto& p : probabilities) sum += *p;
    const double tol = provenance.kind == Provenance::Kind::kExact
                           ? 1e-6
                           : 5.0 / std::sqrt(static_cast<double>(provenance.shots));
    if (std::abs(sum - 1.0) > tol) {
      std::ostringstream msg;
      msg << "probabilities sum to " << sum << ", expected 1 within " << tol;
      fail(msg.str());
    }
  }
}

}  // namespace mqst
