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

// Pairwise maximal-entropy engine.
//
// Two known mean measurements on levels |1>, |2> are encoded in the exponent
//
//     A = -lambda11 |1><1| - lambda12 |1><2| - conj(lambda12) |2><1|
//
// of rho = exp(A) / Z, embedded in a space of `levels` states (levels - 2 of
// them are zero modes of A). The 2x2 block of A is diagonalized in closed
// form; the forward map turns multipliers into moments (x11, x22, x12) and
// the inverse routines recover multipliers from measured moments.
//
// Entry convention: x12 is the (1,2) entry of rho.

#ifndef MQST_MAXENT_PAIR_HPP
#define MQST_MAXENT_PAIR_HPP

#include "mqst/qmath.hpp"

namespace mqst::maxent {

inline constexpr int kDefaultLevels = 4;
/// |lambda12| below this routes to the diagonal branch (k3, k4 undefined).
inline constexpr double kDegenerateLambda = 1e-8;
inline constexpr double kMultiplierBound = 50.0;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kDefaultDelta = 1e-14;
/// Populations (and coherence moduli) below this are treated as exact zeros.
inline constexpr double kZeroThreshold = 1e-15;

class DegenerateMultiplierError : public Error {
 public:
  DegenerateMultiplierError() : Error("degenerate: use diagonal branch") {}
};

class InfeasiblePairError : public Error {
 public:
  using Error::Error;
};

class ZeroPairError : public Error {
 public:
  ZeroPairError() : Error("zero pair: coherence is 0") {}
};

class InconsistentSolveError : public Error {
 public:
  using Error::Error;
};

/// Multipliers of one pairwise problem; lambda21 = conj(lambda12) is implied.
struct LagrangePair {
  double lambda11 = 0.0;
  double lambda12_modulus = 0.0;
  double theta12 = 0.0;

  Complex lambda12() const { return std::polar(lambda12_modulus, theta12); }
};

struct PairEigenSystem {
  double eps3 = 0.0;  // -(lambda11 + sqrt(lambda11^2 + 4|lambda12|^2)) / 2
  double eps4 = 0.0;  // -(lambda11 - sqrt(lambda11^2 + 4|lambda12|^2)) / 2
  Complex k3;         // -eps3 / conj(lambda12)
  Complex k4;         // -eps4 / conj(lambda12)
  double a = 0.0;     // |k3|^2 / (|k3|^2 + 1) * exp(eps3)
  double b = 0.0;     // |k4|^2 / (|k4|^2 + 1) * exp(eps4)
  double Z = 0.0;     // (levels - 2) + exp(eps3) + exp(eps4)
};

struct PairMoments {
  double x11 = 0.0;
  double x22 = 0.0;
  Complex x12;
};

struct SolveReport {
  LagrangePair solution;
  double residual_norm = 0.0;
  int iterations = 0;
  bool scaled = false;
  double scale_factor = 1.0;
  bool converged = false;
  /// Multiplier modulus ended below kDegenerateLambda.
  bool degenerate = false;
};

struct PairOptions {
  double tolerance = kDefaultTolerance;
  /// Scaled pairs are normalized to populations summing to 1 - delta.
  double delta = kDefaultDelta;
  int levels = kDefaultLevels;
  int max_iterations = 200;
};

/// Closed-form eigen-system of the exponent. Throws DegenerateMultiplierError
/// when |lambda12| < kDegenerateLambda.
PairEigenSystem eigen_system(const LagrangePair& lp, int levels = kDefaultLevels);

/// x11 = (a+b)/Z, x22 = (a/|k3|^2 + b/|k4|^2)/Z, x12 = (a/conj(k3) + b/conj(k4))/Z.
/// Falls back to rho ~ diag(exp(-lambda11), 1, ..., 1) for vanishing lambda12.
PairMoments forward_moments(const LagrangePair& lp, int levels = kDefaultLevels);

/// The exponent A as a dense levels x levels matrix.
ComplexMatrix exponent_matrix(const LagrangePair& lp, int levels = kDefaultLevels);

/// rho assembled from the eigen-system projectors (diagonal branch when degenerate).
ComplexMatrix pair_density_matrix(const LagrangePair& lp, int levels = kDefaultLevels);

/// Inverse of the forward map for a known population and coherence.
/// Requires 0 < x11 < 1 and |x12|^2 <= x11 (1 - x11).
SolveReport solve_from_probability_and_coherence(double x11, Complex x12,
                                                 const PairOptions& opts = {});

struct PopulationEstimate {
  double value = 0.0;
  SolveReport report;
};

/// Raw maximal-entropy prediction g(lambda) of x22 from (x11, x12).
PopulationEstimate predict_population_unscaled(double x11, Complex x12,
                                               const PairOptions& opts = {});

/// Scaled prediction of x22 from (x11, x12): (x11, x12) are multiplied by the
/// s for which the pairwise populations sum to 1 - delta, the multipliers are
/// solved at that normalization and g is back-scaled by 1/s.
PopulationEstimate predict_population(double x11, Complex x12, const PairOptions& opts = {});

struct PairScaling {
  double s = 1.0;
  double x_ii = 0.0;  // scaled
  double x_jj = 0.0;  // scaled
};

/// s = (1 - delta) / (x_ii + x_jj). Throws ZeroPairError when both vanish.
PairScaling scale_pair(double x_ii, double x_jj, double delta);

struct CoherenceEstimate {
  double magnitude = 0.0;
  SolveReport report;
};

/// |x_ij| from two populations via the scaled pairwise solve.
CoherenceEstimate predict_coherence_scaled(double x_ii, double x_jj,
                                           const PairOptions& opts = {});

/// The same solve without scaling. Never throws on non-convergence or on a
/// vanishing multiplier: the best iterate is reported, and a degenerate
/// solution yields magnitude 0 with report.degenerate set.
CoherenceEstimate predict_coherence_unscaled(double x_ii, double x_jj,
                                             const PairOptions& opts = {});

}  // namespace mqst::maxent

#endif  // MQST_MAXENT_PAIR_HPP
