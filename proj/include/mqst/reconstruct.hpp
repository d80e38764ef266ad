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

// Full density-matrix reconstruction from N mean measurements.
//
// Real mode: every coherence amplitude is predicted from the two populations
// (the target is assumed to have non-negative real amplitudes).
// Complex mode: one population x_rr and the row x_rj are measured; the other
// populations are predicted from (x_rr, x_rj), the remaining amplitudes from
// population pairs, and the phases are chained through the reference row.

#ifndef MQST_RECONSTRUCT_HPP
#define MQST_RECONSTRUCT_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mqst/maxent_pair.hpp"
#include "mqst/measurement.hpp"
#include "mqst/qmath.hpp"

namespace mqst {

/// A pairwise failure, tagged with the pair that caused it.
class PairError : public Error {
 public:
  PairError(std::size_t i, std::size_t j, const std::string& what);
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

struct PhaseTable {
  std::size_t reference = 0;
  /// p_rj for every j (p_rr = 0).
  std::vector<double> row;
  /// Columns whose reference coherence vanished; their phase is 0.
  std::vector<bool> dont_care;

  /// p_ij = p_rj - p_ri wrapped to (-pi, pi].
  double phase(std::size_t i, std::size_t j) const;
};

/// first_row holds (j, x_rj) for j != r; unlisted columns are don't-care.
PhaseTable build_phase_table(const std::vector<std::pair<std::size_t, Complex>>& first_row,
                             std::size_t reference, std::size_t dimension);

struct TraceStep {
  std::size_t step = 0;  // 1-based
  double entropy = 0.0;
  double purity = 0.0;
  double clamped_mass = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceStep> steps;
};

struct ReconstructConfig {
  double tolerance = maxent::kDefaultTolerance;
  double delta = maxent::kDefaultDelta;
  bool scaled = true;
  /// Complex mode reference row. nullopt picks the largest measured
  /// population; a set with a single population always uses that one.
  std::optional<std::size_t> reference = 0;
  /// Entropy and purity after every coherence insertion (one eigensolve of
  /// the full matrix per step).
  bool record_trace = false;
  /// Insertion order of the off-diagonal pairs (i < j); empty means
  /// lexicographic. Must list every pair exactly once.
  std::vector<std::pair<std::size_t, std::size_t>> pair_order;
  /// Worker threads for independent pair solves; 0 = worker_count().
  unsigned workers = 0;
};

struct Reconstruction {
  DensityMatrix rho;
  ConvergenceTrace trace;
  std::size_t pairs_solved = 0;
  std::size_t reference = 0;
  /// Complex mode: factor the measured and predicted entries were divided by
  /// so the diagonal sums to 1 (1 when no renormalization was needed).
  double diagonal_normalization = 1.0;
  /// Pairs whose unscaled solve came back degenerate (coherence set to 0).
  std::size_t degenerate_pairs = 0;
};

Reconstruction reconstruct_real(const MeasurementSet& ms, const ReconstructConfig& config = {});

Reconstruction reconstruct_complex(const MeasurementSet& ms,
                                   const ReconstructConfig& config = {});

/// Full Hermitian matrix from a diagonal and upper-triangle coherences.
/// Throws when the diagonal sum deviates from 1 by more than 1e-6 or a
/// coherence breaks |c_ij|^2 <= c_ii c_jj + 1e-6; a sum within 1e-6 is
/// divided out.
DensityMatrix assemble(const std::vector<double>& diagonal, const std::vector<Coherence>& coherences);

}  // namespace mqst

#endif  // MQST_RECONSTRUCT_HPP
