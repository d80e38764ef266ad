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

#include "mqst/maxent_pair.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mqst/newton.hpp"

namespace mqst::maxent {

namespace {

// Lower end of the |lambda12| search range; well below kDegenerateLambda so a
// vanishing multiplier is reachable and detectable.
constexpr double kMinModulus = 1e-12;

constexpr std::array<double, 5> kGridLambda11{-6.0, -2.0, 0.0, 2.0, 6.0};
const std::array<double, 4> kGridLogModulus{std::log(0.01), std::log(0.3), std::log(3.0),
                                            std::log(20.0)};

void check_levels(int levels) {
  if (levels < 3) throw Error("pairwise embedding needs at least 3 levels");
}

void check_options(const PairOptions& opts) {
  check_levels(opts.levels);
  if (!(opts.tolerance > 0.0)) throw Error("solver tolerance must be positive");
  if (!(opts.delta > 0.0 && opts.delta < 0.1)) throw Error("delta must lie in (0, 0.1)");
}

Box2 multiplier_box() {
  return {{-kMultiplierBound, std::log(kMinModulus)},
          {kMultiplierBound, std::log(kMultiplierBound)}};
}

NewtonOptions newton_options(const PairOptions& opts) {
  NewtonOptions n;
  n.tolerance = opts.tolerance;
  n.max_iterations = opts.max_iterations;
  return n;
}

// Moments at real lambda12 (theta = 0) together with the partition function.
struct RealMoments {
  double f = 0.0;  // x11
  double g = 0.0;  // x22
  double h = 0.0;  // |x12|
  double Z = 0.0;
};

RealMoments evaluate(double lambda11, double modulus, int levels) {
  const LagrangePair lp{lambda11, modulus, 0.0};
  const PairMoments m = forward_moments(lp, levels);
  RealMoments out{m.x11, m.x22, std::abs(m.x12), 0.0};
  if (modulus < kDegenerateLambda) {
    out.Z = std::exp(-lambda11) + (levels - 1);
  } else {
    out.Z = eigen_system(lp, levels).Z;
  }
  return out;
}

// Starting point for a scaled solve whose target populations are
// (big, small) on levels (1, 2), summing to 1 - delta. With the partition
// function pinned at (levels - 2)/delta, exp(eps4) carries nearly all weight
// and the level-1 share of the dominant projector is eps4 / (eps4 - eps3).
Vec2 scaled_start(double big, double small, double delta, int levels) {
  const double zero_modes = levels - 2;
  const double eps4 = std::log(zero_modes * (1.0 - delta) / delta);
  const double eps3 = -eps4 * small / big;
  const double lambda11 = -(eps3 + eps4);
  const double modulus = std::sqrt(std::max(-eps3 * eps4, kMinModulus * kMinModulus));
  return {lambda11, std::log(modulus)};
}

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " outside [0, 1]";
    throw InfeasiblePairError(msg.str());
  }
}

}  // namespace

PairEigenSystem eigen_system(const LagrangePair& lp, int levels) {
  check_levels(levels);
  const double mu = lp.lambda12_modulus;
  if (!(mu >= kDegenerateLambda)) throw DegenerateMultiplierError();

  PairEigenSystem es;
  const double l11 = lp.lambda11;
  const double root = std::hypot(l11, 2.0 * mu);
  // eps3 * eps4 = -|lambda12|^2; take the cancellation-free root first.
  if (l11 >= 0.0) {
    es.eps3 = -0.5 * (l11 + root);
    es.eps4 = mu * mu / -es.eps3;
  } else {
    es.eps4 = 0.5 * (root - l11);
    es.eps3 = -mu * mu / es.eps4;
  }
  const Complex lambda12_conj = std::conj(lp.lambda12());
  es.k3 = -es.eps3 / lambda12_conj;
  es.k4 = -es.eps4 / lambda12_conj;

  // Unit-normalized eigenvectors (k, 1) / sqrt(|k|^2 + 1).
  const double n3 = std::norm(es.k3);
  const double n4 = std::norm(es.k4);
  const double e3 = std::exp(es.eps3);
  const double e4 = std::exp(es.eps4);
  es.a = n3 / (n3 + 1.0) * e3;
  es.b = n4 / (n4 + 1.0) * e4;
  es.Z = (levels - 2) + e3 + e4;
  return es;
}

PairMoments forward_moments(const LagrangePair& lp, int levels) {
  check_levels(levels);
  if (lp.lambda12_modulus < kDegenerateLambda) {
    const double w = std::exp(-lp.lambda11);
    const double Z = w + (levels - 1);
    return {w / Z, 1.0 / Z, Complex(0.0, 0.0)};
  }
  const PairEigenSystem es = eigen_system(lp, levels);
  const double n3 = std::norm(es.k3);
  const double n4 = std::norm(es.k4);
  PairMoments m;
  m.x11 = (es.a + es.b) / es.Z;
  m.x22 = (es.a / n3 + es.b / n4) / es.Z;
  m.x12 = (es.a / std::conj(es.k3) + es.b / std::conj(es.k4)) / es.Z;
  return m;
}

ComplexMatrix exponent_matrix(const LagrangePair& lp, int levels) {
  check_levels(levels);
  ComplexMatrix A = ComplexMatrix::Zero(levels, levels);
  A(0, 0) = -lp.lambda11;
  A(0, 1) = -lp.lambda12();
  A(1, 0) = -std::conj(lp.lambda12());
  return A;
}

ComplexMatrix pair_density_matrix(const LagrangePair& lp, int levels) {
  check_levels(levels);
  ComplexMatrix rho = ComplexMatrix::Zero(levels, levels);
  for (int k = 2; k < levels; ++k) rho(k, k) = 1.0;  // zero modes: exp(0)
  if (lp.lambda12_modulus < kDegenerateLambda) {
    rho(0, 0) = std::exp(-lp.lambda11);
    rho(1, 1) = 1.0;
    return rho / rho.trace().real();
  }
  const PairEigenSystem es = eigen_system(lp, levels);
  auto add_projector = [&](Complex k, double eps) {
    ComplexVector phi = ComplexVector::Zero(levels);
    phi(0) = k;
    phi(1) = 1.0;
    phi /= phi.norm();
    rho += std::exp(eps) * (phi * phi.adjoint());
  };
  add_projector(es.k3, es.eps3);
  add_projector(es.k4, es.eps4);
  return rho / es.Z;
}

SolveReport solve_from_probability_and_coherence(double x11, Complex x12,
                                                 const PairOptions& opts) {
  check_options(opts);
  if (!(x11 > 0.0 && x11 < 1.0)) {
    throw InfeasiblePairError("probability must lie strictly between 0 and 1");
  }
  const double target_h = std::abs(x12);
  if (target_h * target_h > x11 * (1.0 - x11) + 1e-12) {
    throw InfeasiblePairError("coherence violates |x12|^2 <= x11 (1 - x11)");
  }

  SolveReport report;
  const int levels = opts.levels;
  if (target_h < kZeroThreshold) {
    // lambda12 = 0: rho ~ diag(exp(-lambda11), 1, ..., 1).
    report.solution = {-std::log((levels - 1) * x11 / (1.0 - x11)), 0.0, 0.0};
    const PairMoments m = forward_moments(report.solution, levels);
    report.residual_norm = std::abs(m.x11 - x11);
    report.converged = report.residual_norm <= opts.tolerance;
    report.degenerate = true;
    return report;
  }

  const Residual2 residual = [&](const Vec2& u) -> Vec2 {
    const RealMoments m = evaluate(u[0], std::exp(u[1]), levels);
    return {std::log(m.f) - std::log(x11), std::log(m.h) - std::log(target_h)};
  };
  // Heuristic start: lambda11 = ln(x22 / x11) with the pure-state guess for
  // x22, |lambda12| = 1.
  const double x22_guess = std::max(target_h * target_h / x11, 1e-12);
  const Vec2 start{std::log(x22_guess / x11), 0.0};
  const NewtonResult nr = solve_newton2_with_restarts(
      residual, start, multiplier_box(), kGridLambda11, kGridLogModulus, newton_options(opts));

  // A positive lambda12 yields a negative coherence; rotate by pi.
  report.solution = {nr.x[0], std::exp(nr.x[1]), wrap_phase(std::arg(x12) + std::numbers::pi)};
  const PairMoments m = forward_moments(report.solution, levels);
  report.residual_norm = std::max(std::abs(m.x11 - x11), std::abs(m.x12 - x12));
  report.iterations = nr.iterations;
  report.degenerate = report.solution.lambda12_modulus < kDegenerateLambda;
  report.converged = report.residual_norm <= opts.tolerance;
  if (!report.converged) {
    throw ConvergenceError("probability/coherence solve did not converge", nr.iterations,
                           report.residual_norm);
  }
  return report;
}

PopulationEstimate predict_population_unscaled(double x11, Complex x12,
                                               const PairOptions& opts) {
  PopulationEstimate out;
  out.report = solve_from_probability_and_coherence(x11, x12, opts);
  out.value = forward_moments(out.report.solution, opts.levels).x22;
  return out;
}

PopulationEstimate predict_population(double x11, Complex x12, const PairOptions& opts) {
  check_options(opts);
  if (!(x11 > 0.0 && x11 <= 1.0)) {
    throw InfeasiblePairError("reference probability must lie in (0, 1]");
  }
  PopulationEstimate out;
  out.report.scaled = true;
  const double target_h = std::abs(x12);
  if (target_h < kZeroThreshold) {
    // No coherence with a populated level: the partner level is empty.
    out.report.degenerate = true;
    out.report.converged = true;
    return out;
  }

  const int levels = opts.levels;
  const double delta = opts.delta;
  const double log_ratio = std::log(x11) - std::log(target_h);
  const double x22_guess = target_h * target_h / x11;
  // Keep the larger population on the level that carries lambda11 so the
  // multipliers stay well inside the box.
  const bool known_on_first = x22_guess <= x11;

  const Residual2 residual = [&](const Vec2& u) -> Vec2 {
    const RealMoments m = evaluate(u[0], std::exp(u[1]), levels);
    const double known = known_on_first ? m.f : m.g;
    return {std::log((levels - 2) / m.Z) - std::log(delta),
            std::log(known) - std::log(m.h) - log_ratio};
  };
  const double guess_scale = (1.0 - delta) / (x11 + x22_guess);
  const double big = guess_scale * std::max(x11, x22_guess);
  const double small = guess_scale * std::min(x11, x22_guess);
  const NewtonResult nr =
      solve_newton2_with_restarts(residual, scaled_start(big, small, delta, levels),
                                  multiplier_box(), kGridLambda11, kGridLogModulus,
                                  newton_options(opts));

  const RealMoments m = evaluate(nr.x[0], std::exp(nr.x[1]), levels);
  const double known = known_on_first ? m.f : m.g;
  const double unknown = known_on_first ? m.g : m.f;
  const double s = known / x11;
  out.value = unknown / s;
  out.report.solution = {nr.x[0], std::exp(nr.x[1]),
                         wrap_phase(std::arg(x12) + std::numbers::pi)};
  out.report.scale_factor = s;
  out.report.iterations = nr.iterations;
  out.report.residual_norm =
      std::max(std::abs(m.f + m.g - (1.0 - delta)), std::abs(m.h - s * target_h));
  out.report.degenerate = out.report.solution.lambda12_modulus < kDegenerateLambda;
  out.report.converged = out.report.residual_norm <= opts.tolerance;
  if (!out.report.converged) {
    throw ConvergenceError("scaled population solve did not converge", nr.iterations,
                           out.report.residual_norm);
  }
  return out;
}

PairScaling scale_pair(double x_ii, double x_jj, double delta) {
  if (!(delta > 0.0 && delta < 0.1)) throw Error("delta must lie in (0, 0.1)");
  if (x_ii < 0.0 || x_jj < 0.0) throw InfeasiblePairError("negative population");
  const double total = x_ii + x_jj;
  if (total <= 0.0) throw ZeroPairError();
  const double s = (1.0 - delta) / total;
  return {s, s * x_ii, s * x_jj};
}

CoherenceEstimate predict_coherence_scaled(double x_ii, double x_jj, const PairOptions& opts) {
  check_options(opts);
  require_unit_interval(x_ii, "x_ii");
  require_unit_interval(x_jj, "x_jj");
  CoherenceEstimate out;
  out.report.scaled = true;
  if (x_ii < kZeroThreshold || x_jj < kZeroThreshold) {
    out.report.degenerate = true;
    out.report.converged = true;
    return out;
  }

  const int levels = opts.levels;
  const double delta = opts.delta;
  const PairScaling sc = scale_pair(x_ii, x_jj, delta);
  // |x12| is symmetric in the two levels; solve with the larger population
  // on level 1 so the multipliers stay bounded.
  const double big = std::max(sc.x_ii, sc.x_jj);
  const double small = std::min(sc.x_ii, sc.x_jj);
  // Level 2 never holds less than 1/Z = delta / (levels - 2): a smaller
  // scaled population is only reached in the lambda12 -> 0 limit.
  if (small <= delta / (levels - 2)) {
    out.report.scale_factor = sc.s;
    out.report.degenerate = true;
    out.report.converged = true;
    return out;
  }
  const double log_ratio = std::log(big) - std::log(small);

  const Residual2 residual = [&](const Vec2& u) -> Vec2 {
    const RealMoments m = evaluate(u[0], std::exp(u[1]), levels);
    return {std::log((levels - 2) / m.Z) - std::log(delta),
            std::log(m.f) - std::log(m.g) - log_ratio};
  };
  const NewtonResult nr = solve_newton2_with_restarts(
      residual, scaled_start(big, small, delta, levels), multiplier_box(), kGridLambda11,
      kGridLogModulus, newton_options(opts));

  const RealMoments m = evaluate(nr.x[0], std::exp(nr.x[1]), levels);
  out.report.solution = {nr.x[0], std::exp(nr.x[1]), 0.0};
  out.report.scale_factor = sc.s;
  out.report.iterations = nr.iterations;
  out.report.residual_norm = std::max(std::abs(m.f - big), std::abs(m.g - small));
  out.report.degenerate = out.report.solution.lambda12_modulus < kDegenerateLambda;
  out.report.converged = out.report.residual_norm <= opts.tolerance;
  if (!out.report.converged) {
    throw ConvergenceError("scaled coherence solve did not converge", nr.iterations,
                           out.report.residual_norm);
  }
  out.magnitude = m.h / sc.s;
  if (out.magnitude * out.magnitude > x_ii * x_jj + opts.tolerance) {
    throw InconsistentSolveError("inconsistent solve: |x_ij|^2 exceeds x_ii x_jj");
  }
  return out;
}

CoherenceEstimate predict_coherence_unscaled(double x_ii, double x_jj,
                                             const PairOptions& opts) {
  check_options(opts);
  require_unit_interval(x_ii, "x_ii");
  require_unit_interval(x_jj, "x_jj");
  CoherenceEstimate out;
  if (x_ii < kZeroThreshold || x_jj < kZeroThreshold) {
    out.report.degenerate = true;
    out.report.converged = true;
    return out;
  }

  const int levels = opts.levels;
  const Residual2 residual = [&](const Vec2& u) -> Vec2 {
    const RealMoments m = evaluate(u[0], std::exp(u[1]), levels);
    return {std::log(m.f) - std::log(x_ii), std::log(m.g) - std::log(x_jj)};
  };
  const Vec2 start{std::log(x_jj / x_ii), 0.0};
  const NewtonResult nr = solve_newton2_with_restarts(
      residual, start, multiplier_box(), kGridLambda11, kGridLogModulus, newton_options(opts));

  const RealMoments m = evaluate(nr.x[0], std::exp(nr.x[1]), levels);
  out.report.solution = {nr.x[0], std::exp(nr.x[1]), 0.0};
  out.report.iterations = nr.iterations;
  out.report.residual_norm = std::max(std::abs(m.f - x_ii), std::abs(m.g - x_jj));
  out.report.converged = out.report.residual_norm <= opts.tolerance;
  out.report.degenerate = out.report.solution.lambda12_modulus < kDegenerateLambda;

  // The search creeps toward lambda12 = 0 with residuals of order |lambda12|^2,
  // so test the diagonal branch directly: rho ~ diag(exp(-lambda11), 1, ...).
  if (!out.report.degenerate) {
    const double z = x_ii / x_jj + (levels - 1);
    const double diag_residual =
        std::max(std::abs(x_ii / x_jj / z - x_ii), std::abs(1.0 / z - x_jj));
    if (diag_residual <= opts.tolerance) {
      out.report.solution = {-std::log(x_ii / x_jj), 0.0, 0.0};
      out.report.residual_norm = diag_residual;
      out.report.converged = true;
      out.report.degenerate = true;
    }
  }
  out.magnitude = out.report.degenerate ? 0.0 : m.h;
  return out;
}

}  // namespace mqst::maxent
