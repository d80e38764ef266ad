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

#include "mqst/reconstruct.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "mqst/parallel.hpp"

namespace mqst {

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

constexpr double kDiagonalDrift = 1e-9;
constexpr double kAssemblyTol = 1e-6;

std::string pair_message(std::size_t i, std::size_t j, const std::string& what) {
  std::ostringstream msg;
  msg << "pair (" << i << ", " << j << "): " << what;
  return msg.str();
}

std::vector<Pair> lexicographic_pairs(std::size_t dim) {
  std::vector<Pair> pairs;
  pairs.reserve(dim * (dim - 1) / 2);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::vector<Pair> insertion_order(std::size_t dim, const ReconstructConfig& config) {
  if (config.pair_order.empty()) return lexicographic_pairs(dim);
  std::vector<Pair> sorted = config.pair_order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != lexicographic_pairs(dim)) {
    throw Error("pair_order must list every pair i < j exactly once");
  }
  return config.pair_order;
}

maxent::PairOptions pair_options(const ReconstructConfig& config, std::size_t dim) {
  maxent::PairOptions opts;
  opts.tolerance = config.tolerance;
  opts.delta = config.delta;
  // Unscaled solves embed the pair in the full system; scaled ones are
  // insensitive to the number of zero modes and keep the 4-level form.
  if (!config.scaled) {
    opts.levels = static_cast<int>(std::max<std::size_t>(dim, maxent::kDefaultLevels));
  }
  return opts;
}

// Runs body(k) over independent pair indices, re-tagging failures.
template <class Body>
void for_each_pair(const std::vector<Pair>& pairs, unsigned workers, Body body) {
  parallel_for(
      pairs.size(),
      [&](std::size_t k) {
        try {
          body(k);
        } catch (const PairError&) {
          throw;
        } catch (const std::exception& e) {
          throw PairError(pairs[k].first, pairs[k].second, e.what());
        }
      },
      workers);
}

struct Amplitude {
  double magnitude = 0.0;
  bool degenerate = false;
};

Amplitude coherence_amplitude(double x_ii, double x_jj, const ReconstructConfig& config,
                              const maxent::PairOptions& opts) {
  const maxent::CoherenceEstimate est = config.scaled
                                            ? maxent::predict_coherence_scaled(x_ii, x_jj, opts)
                                            : maxent::predict_coherence_unscaled(x_ii, x_jj, opts);
  return {est.magnitude, !config.scaled && est.report.degenerate};
}

// Inserts the coherences in `order` into the diagonal matrix one at a time
// and records entropy and purity after each insertion.
ConvergenceTrace record(const std::vector<double>& diagonal, const std::vector<Pair>& order,
                        const ComplexMatrix& full) {
  const auto dim = static_cast<Eigen::Index>(diagonal.size());
  ComplexMatrix partial = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) partial(k, k) = diagonal[static_cast<std::size_t>(k)];
  ConvergenceTrace trace;
  trace.steps.reserve(order.size());
  for (std::size_t s = 0; s < order.size(); ++s) {
    const auto i = static_cast<Eigen::Index>(order[s].first);
    const auto j = static_cast<Eigen::Index>(order[s].second);
    partial(i, j) = full(i, j);
    partial(j, i) = full(j, i);
    const DensityMatrix rho(partial);
    const EntropyResult h = von_neumann_entropy(rho);
    trace.steps.push_back({s + 1, h.value, purity(rho), h.clamped_mass});
  }
  return trace;
}

double normalize_diagonal(std::vector<double>& diagonal) {
  double sum = 0.0;
  for (double d : diagonal) sum += d;
  if (!(sum > 0.0)) throw Error("populations sum to zero");
  if (std::abs(sum - 1.0) <= kDiagonalDrift) return 1.0;
  for (double& d : diagonal) d /= sum;
  return sum;
}

Reconstruction finish(std::vector<double> diagonal, std::vector<Coherence> coherences,
                      const std::vector<Pair>& order, const ReconstructConfig& config,
                      std::size_t pairs_solved, std::size_t reference, double normalization,
                      std::size_t degenerate) {
  DensityMatrix rho = assemble(diagonal, coherences);
  Reconstruction out{std::move(rho), {}, pairs_solved, reference, normalization, degenerate};
  if (config.record_trace) out.trace = record(diagonal, order, out.rho.matrix());
  return out;
}

}  // namespace

PairError::PairError(std::size_t i, std::size_t j, const std::string& what)
    : Error(pair_message(i, j, what)), i_(i), j_(j) {}

double PhaseTable::phase(std::size_t i, std::size_t j) const {
  return wrap_phase(row.at(j) - row.at(i));
}

PhaseTable build_phase_table(const std::vector<std::pair<std::size_t, Complex>>& first_row,
                             std::size_t reference, std::size_t dimension) {
  if (reference >= dimension) throw DimensionError("reference index out of range");
  PhaseTable table;
  table.reference = reference;
  table.row.assign(dimension, 0.0);
  table.dont_care.assign(dimension, true);
  table.dont_care[reference] = false;
  for (const auto& [j, x] : first_row) {
    if (j >= dimension || j == reference) throw DimensionError("phase table column out of range");
    if (std::abs(x) > maxent::kZeroThreshold) {
      table.row[j] = std::arg(x);
      table.dont_care[j] = false;
    }
  }
  return table;
}

DensityMatrix assemble(const std::vector<double>& diagonal,
                       const std::vector<Coherence>& coherences) {
  const std::size_t dim = diagonal.size();
  if (dim == 0) throw DimensionError("empty diagonal");
  double sum = 0.0;
  for (double d : diagonal) sum += d;
  if (std::abs(sum - 1.0) > kAssemblyTol) {
    std::ostringstream msg;
    msg << "assembled trace " << sum << " deviates from 1 by more than 1e-6";
    throw Error(msg.str());
  }
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                        static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) m(k, k) = diagonal[k];
  for (const Coherence& c : coherences) {
    if (!(c.i < c.j && c.j < dim)) throw DimensionError("coherence index out of range");
    if (std::norm(c.value) > diagonal[c.i] * diagonal[c.j] + kAssemblyTol) {
      throw PairError(c.i, c.j, "coherence violates |c_ij|^2 <= c_ii c_jj");
    }
    m(c.i, c.j) = c.value;
    m(c.j, c.i) = std::conj(c.value);
  }
  return DensityMatrix(m / sum);
}

Reconstruction reconstruct_real(const MeasurementSet& ms, const ReconstructConfig& config) {
  ms.validate();
  if (!ms.has_all_probabilities()) throw InvalidMeasurementError("real mode needs all N probabilities");
  const std::size_t dim = ms.dimension;
  std::vector<double> diagonal(dim);
  for (std::size_t k = 0; k < dim; ++k) diagonal[k] = *ms.probabilities[k];
  const double normalization = normalize_diagonal(diagonal);

  const std::vector<Pair> order = insertion_order(dim, config);
  const std::vector<Pair> pairs = lexicographic_pairs(dim);
  const maxent::PairOptions opts = pair_options(config, dim);
  std::vector<Amplitude> amp(pairs.size());
  for_each_pair(pairs, config.workers, [&](std::size_t k) {
    amp[k] = coherence_amplitude(diagonal[pairs[k].first], diagonal[pairs[k].second], config, opts);
  });

  std::vector<Coherence> coherences;
  coherences.reserve(pairs.size());
  std::size_t degenerate = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    coherences.push_back({pairs[k].first, pairs[k].second, Complex(amp[k].magnitude, 0.0)});
    degenerate += amp[k].degenerate ? 1 : 0;
  }
  return finish(std::move(diagonal), std::move(coherences), order, config, pairs.size(), 0,
                normalization, degenerate);
}

Reconstruction reconstruct_complex(const MeasurementSet& ms, const ReconstructConfig& config) {
  ms.validate();
  const std::size_t dim = ms.dimension;
  const std::vector<std::size_t> known = ms.known_populations();
  if (known.empty()) throw InvalidMeasurementError("complex mode needs the reference population");

  std::size_t r = known.front();
  if (known.size() > 1) {
    if (config.reference) {
      r = *config.reference;
      if (r >= dim || !ms.probabilities[r]) {
        throw InvalidMeasurementError("reference population " + std::to_string(r) +
                                      " is not measured");
      }
    } else {
      for (std::size_t k : known) {
        if (*ms.probabilities[k] > *ms.probabilities[r]) r = k;
      }
    }
  }
  const double x_rr = *ms.probabilities[r];
  if (x_rr < maxent::kZeroThreshold) {
    throw Error("reference population vanishes; choose another reference");
  }

  // Row r, indexed by column.
  std::vector<std::optional<Complex>> row(dim);
  for (const Coherence& c : ms.coherences) {
    if (c.i == r) row[c.j] = c.value;
    if (c.j == r) row[c.i] = std::conj(c.value);
  }
  for (std::size_t j = 0; j < dim; ++j) {
    if (j != r && !row[j]) {
      throw InvalidMeasurementError("missing reference-row coherence (" + std::to_string(r) +
                                    ", " + std::to_string(j) + ")");
    }
  }

  const std::vector<Pair> order = insertion_order(dim, config);
  const maxent::PairOptions opts = pair_options(config, dim);

  // Stage 1: populations from (x_rr, x_rj).
  std::vector<Pair> row_pairs;
  for (std::size_t j = 0; j < dim; ++j) {
    if (j != r) row_pairs.emplace_back(std::min(r, j), std::max(r, j));
  }
  std::vector<double> diagonal(dim, 0.0);
  diagonal[r] = x_rr;
  for_each_pair(row_pairs, config.workers, [&](std::size_t k) {
    const std::size_t j = row_pairs[k].first == r ? row_pairs[k].second : row_pairs[k].first;
    const Complex x_rj = *row[j];
    if (std::abs(x_rj) < maxent::kZeroThreshold) return;  // empty level
    diagonal[j] = config.scaled ? maxent::predict_population(x_rr, x_rj, opts).value
                                : maxent::predict_population_unscaled(x_rr, x_rj, opts).value;
  });
  // Dividing the measured row by the same factor keeps |x_rj|^2 = x_rr x_jj.
  const double normalization = normalize_diagonal(diagonal);
  for (auto& x : row) {
    if (x) *x /= normalization;
  }

  // Stage 2: amplitudes of the pairs off the reference row.
  std::vector<Pair> inner;
  for (const Pair& p : lexicographic_pairs(dim)) {
    if (p.first != r && p.second != r) inner.push_back(p);
  }
  std::vector<Amplitude> amp(inner.size());
  for_each_pair(inner, config.workers, [&](std::size_t k) {
    amp[k] = coherence_amplitude(diagonal[inner[k].first], diagonal[inner[k].second], config, opts);
  });

  // Stage 3: phases chained through row r.
  std::vector<std::pair<std::size_t, Complex>> first_row;
  for (std::size_t j = 0; j < dim; ++j) {
    if (j != r) first_row.emplace_back(j, *row[j]);
  }
  const PhaseTable phases = build_phase_table(first_row, r, dim);

  std::vector<Coherence> coherences;
  coherences.reserve(dim * (dim - 1) / 2);
  std::size_t degenerate = 0;
  std::size_t next_inner = 0;
  for (const Pair& p : lexicographic_pairs(dim)) {
    const auto [i, j] = p;
    if (i == r) {
      coherences.push_back({i, j, *row[j]});
    } else if (j == r) {
      coherences.push_back({i, j, std::conj(*row[i])});
    } else {
      const Amplitude& a = amp[next_inner++];
      coherences.push_back({i, j, std::polar(a.magnitude, phases.phase(i, j))});
      degenerate += a.degenerate ? 1 : 0;
    }
  }
  return finish(std::move(diagonal), std::move(coherences), order, config,
                row_pairs.size() + inner.size(), r, normalization, degenerate);
}

}  // namespace mqst
