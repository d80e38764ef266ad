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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mqst/maxent_pair.hpp"
#include "mqst/newton.hpp"
#include "oracles.hpp"

using namespace mqst;
using namespace mqst::maxent;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kPi = std::numbers::pi;

LagrangePair random_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> l11(-3.0, 3.0), mod(0.1, 3.0), th(-kPi, kPi);
  return {l11(rng), mod(rng), th(rng)};
}

// Moments read off exp(A) / Tr exp(A).
PairMoments gibbs_moments(const LagrangePair& lp, int levels = kDefaultLevels) {
  const ComplexMatrix rho = oracle::gibbs(exponent_matrix(lp, levels));
  return {rho(0, 0).real(), rho(1, 1).real(), rho(0, 1)};
}

}  // namespace

TEST_CASE("eigen_system closed forms") {
  const PairEigenSystem unit = eigen_system({0.0, 1.0, 0.0});
  CHECK_THAT(unit.eps3, WithinAbs(-1.0, 1e-14));
  CHECK_THAT(unit.eps4, WithinAbs(1.0, 1e-14));
  CHECK_THAT(std::abs(unit.k3 - Complex(1.0, 0.0)), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::abs(unit.k4 - Complex(-1.0, 0.0)), WithinAbs(0.0, 1e-14));

  const PairEigenSystem ln2 = eigen_system({0.0, std::log(2.0), 0.0});
  CHECK_THAT(ln2.Z, WithinAbs(4.5, 1e-14));

  const PairEigenSystem small = eigen_system({2.0, 1e-7, 0.0});
  CHECK_THAT(small.eps3, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(small.eps4, WithinAbs(0.0, 1e-12));
}

TEST_CASE("eigen_system signals the degenerate branch") {
  CHECK_THROWS_AS(eigen_system({1.0, 1e-9, 0.0}), DegenerateMultiplierError);
  CHECK_THROWS_WITH(eigen_system({1.0, 0.0, 0.0}), ContainsSubstring("diagonal branch"));
}

TEST_CASE("eigen_system invariants on random multipliers") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> l11(-20.0, 20.0), lmod(-7.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const LagrangePair lp{l11(rng), std::pow(10.0, lmod(rng)), 0.3 * trial};
    const PairEigenSystem es = eigen_system(lp);
    CHECK_THAT(es.eps3 + es.eps4, WithinAbs(-lp.lambda11, 1e-12 * (1.0 + std::abs(lp.lambda11))));
    CHECK(es.eps3 <= es.eps4);
    CHECK_THAT(es.Z, WithinRel(2.0 + std::exp(es.eps3) + std::exp(es.eps4), 1e-12));
    CHECK(es.a >= 0.0);
    CHECK(es.b >= 0.0);
    // The pair of eigenvalues of the 2x2 block.
    const HermitianEigen h = hermitian_eigen(exponent_matrix(lp).topLeftCorner(2, 2));
    CHECK_THAT(es.eps3, WithinAbs(h.values(0), 1e-9 * (1.0 + std::abs(lp.lambda11))));
    CHECK_THAT(es.eps4, WithinAbs(h.values(1), 1e-9 * (1.0 + std::abs(lp.lambda11))));
  }
}

TEST_CASE("forward_moments examples") {
  const PairMoments zero = forward_moments({0.0, 0.0, 0.0});
  CHECK_THAT(zero.x11, WithinAbs(0.25, 1e-15));
  CHECK_THAT(zero.x22, WithinAbs(0.25, 1e-15));
  CHECK(std::abs(zero.x12) == 0.0);

  const PairMoments ln2 = forward_moments({0.0, std::log(2.0), 0.0});
  CHECK_THAT(ln2.x11, WithinAbs(1.25 / 4.5, 1e-14));
  CHECK_THAT(ln2.x22, WithinAbs(1.25 / 4.5, 1e-14));
  CHECK_THAT(ln2.x12.real(), WithinAbs(-0.75 / 4.5, 1e-14));
  CHECK_THAT(ln2.x12.imag(), WithinAbs(0.0, 1e-14));

  const PairMoments diag = forward_moments({2.0, 0.0, 0.0});
  const double w = std::exp(-2.0);
  CHECK_THAT(diag.x11, WithinAbs(w / (w + 3.0), 1e-15));
  CHECK_THAT(diag.x22, WithinAbs(1.0 / (w + 3.0), 1e-15));
  CHECK(std::abs(diag.x12) == 0.0);
}

TEST_CASE("forward_moments agree with the matrix exponential") {
  std::mt19937_64 rng(3);
  for (int levels : {3, 4, 8}) {
    for (int trial = 0; trial < 200; ++trial) {
      const LagrangePair lp = random_pair(rng);
      const PairMoments m = forward_moments(lp, levels);
      const PairMoments g = gibbs_moments(lp, levels);
      CHECK_THAT(m.x11, WithinAbs(g.x11, 1e-12));
      CHECK_THAT(m.x22, WithinAbs(g.x22, 1e-12));
      CHECK(std::abs(m.x12 - g.x12) < 1e-12);
      const ComplexMatrix rho = pair_density_matrix(lp, levels);
      CHECK(oracle::max_abs_diff(rho, oracle::gibbs(exponent_matrix(lp, levels))) < 1e-12);
    }
  }
}

TEST_CASE("forward_moments properties") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const LagrangePair lp = random_pair(rng);
    const PairMoments m = forward_moments(lp);
    const PairEigenSystem es = eigen_system(lp);
    const double active = (std::exp(es.eps3) + std::exp(es.eps4)) / es.Z;
    CHECK_THAT(m.x11 + m.x22, WithinAbs(active, 1e-13));
    CHECK(m.x11 + m.x22 < 1.0);
    CHECK(m.x11 >= 0.0);
    CHECK(m.x22 >= 0.0);
    CHECK(std::norm(m.x12) <= m.x11 * m.x22 + 1e-9);
    // theta -> -theta conjugates the coherence.
    const PairMoments flipped = forward_moments({lp.lambda11, lp.lambda12_modulus, -lp.theta12});
    CHECK(std::abs(flipped.x12 - std::conj(m.x12)) < 1e-14);
  }
}

TEST_CASE("raw inverse: populations with no coherence are uniform") {
  const SolveReport r = solve_from_probability_and_coherence(0.25, 0.0);
  CHECK(r.degenerate);
  CHECK(r.solution.lambda12_modulus == 0.0);
  CHECK_THAT(r.solution.lambda11, WithinAbs(0.0, 1e-12));
  CHECK_THAT(predict_population_unscaled(0.25, 0.0).value, WithinAbs(0.25, 1e-12));
}

TEST_CASE("raw inverse reproduces the measured moments") {
  for (const auto& [x11, x12] : {std::pair{0.5, Complex(0.5, 0.0)},
                                 std::pair{0.4, Complex(0.0, 0.2)},
                                 std::pair{0.1, Complex(-0.05, 0.12)}}) {
    const SolveReport r = solve_from_probability_and_coherence(x11, x12);
    CHECK(r.converged);
    const PairMoments m = forward_moments(r.solution);
    CHECK_THAT(m.x11, WithinAbs(x11, 1e-10));
    CHECK(std::abs(m.x12 - x12) < 1e-10);
    const PairMoments g = gibbs_moments(r.solution);
    CHECK_THAT(predict_population_unscaled(x11, x12).value, WithinAbs(g.x22, 1e-10));
  }
  // A pair that is already a pure 2-level block saturates the population.
  CHECK_THAT(predict_population_unscaled(0.5, 0.5).value, WithinAbs(0.5, 1e-4));
}

TEST_CASE("raw inverse rejects infeasible pairs") {
  CHECK_THROWS_AS(solve_from_probability_and_coherence(0.0, 0.0), InfeasiblePairError);
  CHECK_THROWS_AS(solve_from_probability_and_coherence(1.0, 0.0), InfeasiblePairError);
  CHECK_THROWS_AS(solve_from_probability_and_coherence(0.5, 0.6), InfeasiblePairError);
}

TEST_CASE("forward/inverse roundtrip on random multipliers") {
  std::mt19937_64 rng(8);
  int failures = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const LagrangePair lp = random_pair(rng);
    const PairMoments m = forward_moments(lp);
    try {
      const SolveReport r = solve_from_probability_and_coherence(m.x11, m.x12);
      const PairMoments back = forward_moments(r.solution);
      const double res = std::max({std::abs(back.x11 - m.x11), std::abs(back.x22 - m.x22),
                                   std::abs(back.x12 - m.x12)});
      if (res >= 1e-8) ++failures;
    } catch (const ConvergenceError&) {
      ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("scaled population prediction matches the pure-state value") {
  CHECK_THAT(predict_population(0.5, 0.5).value, WithinAbs(0.5, 1e-10));
  CHECK_THAT(predict_population(0.4, Complex(0.0, 0.2)).value, WithinAbs(0.1, 1e-10));
  CHECK_THAT(predict_population(0.1, 0.2).value, WithinAbs(0.4, 1e-10));
  CHECK_THAT(predict_population(0.3, 1e-7).value, WithinAbs(1e-14 / 0.3, 1e-14));
  CHECK(predict_population(0.3, 0.0).value == 0.0);
  CHECK_THROWS_AS(predict_population(0.0, 0.1), InfeasiblePairError);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexVector psi = oracle::random_state(1 + trial % 5, rng);
    const Complex c0 = psi(0), c1 = psi(psi.size() - 1);
    const double x22 = predict_population(std::norm(c0), c0 * std::conj(c1)).value;
    CHECK_THAT(x22, WithinAbs(std::norm(c1), 1e-10));
  }
}

TEST_CASE("scale_pair examples") {
  const double d = 1e-14;
  const PairScaling w = scale_pair(1.0 / 3.0, 1.0 / 3.0, d);
  CHECK_THAT(w.s, WithinAbs(1.5, 1e-12));
  CHECK_THAT(w.x_ii, WithinAbs(0.5, 1e-12));
  CHECK_THAT(w.x_jj, WithinAbs(0.5, 1e-12));
  CHECK_THAT(scale_pair(0.5, 0.5, d).s, WithinAbs(1.0, 1e-12));
  const PairScaling u = scale_pair(0.125, 0.125, d);
  CHECK_THAT(u.s, WithinAbs(4.0, 1e-12));
  CHECK_THAT(u.x_ii + u.x_jj, WithinAbs(1.0 - d, 1e-15));
  CHECK_THROWS_WITH(scale_pair(0.0, 0.0, d), ContainsSubstring("zero pair"));
  CHECK_THROWS(scale_pair(0.1, 0.1, 0.0));
  CHECK_THROWS(scale_pair(0.1, 0.1, 0.1));
}

TEST_CASE("scaled coherence examples") {
  CHECK_THAT(predict_coherence_scaled(0.5, 0.5).magnitude, WithinAbs(0.5, 1e-10));
  CHECK_THAT(predict_coherence_scaled(1.0 / 3.0, 1.0 / 3.0).magnitude, WithinAbs(1.0 / 3.0, 1e-4));
  CHECK(predict_coherence_scaled(1.0, 0.0).magnitude == 0.0);
  CHECK_THAT(predict_coherence_scaled(0.125, 0.125).magnitude, WithinAbs(0.125, 1e-10));
  const CoherenceEstimate e = predict_coherence_scaled(0.2, 0.05);
  CHECK(e.report.scaled);
  CHECK(e.report.converged);
  CHECK(e.report.residual_norm <= kDefaultTolerance);
  CHECK_THAT(e.report.scale_factor, WithinRel((1.0 - kDefaultDelta) / 0.25, 1e-15));
  CHECK_THROWS(predict_coherence_scaled(1.2, 0.1));
}

TEST_CASE("scaled coherence equals sqrt(x_ii x_jj) on pure states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const ComplexVector psi = oracle::random_state(n, rng);
    std::uniform_int_distribution<Eigen::Index> idx(0, psi.size() - 1);
    const Eigen::Index i = idx(rng);
    Eigen::Index j = idx(rng);
    if (j == i) j = (i + 1) % psi.size();
    const double p = std::norm(psi(i)), q = std::norm(psi(j));
    CHECK_THAT(predict_coherence_scaled(p, q).magnitude, WithinAbs(std::sqrt(p * q), 1e-4));
  }
}

TEST_CASE("scaled coherence is homogeneous of degree one") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.001, 0.5), c(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double p = u(rng), q = u(rng);
    const double k = c(rng) / (p + q);
    CHECK_THAT(predict_coherence_scaled(k * p, k * q).magnitude,
               WithinAbs(k * predict_coherence_scaled(p, q).magnitude, 1e-6));
  }
}

TEST_CASE("scaled solution has two zero exponent eigenvalues") {
  for (const auto& [p, q] : {std::pair{0.5, 0.5}, std::pair{0.3, 0.1}, std::pair{0.02, 0.6}}) {
    const CoherenceEstimate e = predict_coherence_scaled(p, q);
    const ComplexMatrix a = exponent_matrix(e.report.solution);
    const RealVector w = hermitian_eigen(a).values;
    int zeros = 0;
    for (Eigen::Index k = 0; k < w.size(); ++k) zeros += std::abs(w(k)) < 1e-8 ? 1 : 0;
    CHECK(zeros == 2);
    // rho carries the zero modes with weight 1/Z each.
    const ComplexMatrix rho = pair_density_matrix(e.report.solution);
    const double z = eigen_system(e.report.solution).Z;
    CHECK_THAT(rho(2, 2).real(), WithinRel(1.0 / z, 1e-12));
    CHECK_THAT(rho(3, 3).real(), WithinRel(1.0 / z, 1e-12));
  }
}

TEST_CASE("unscaled coherence examples") {
  const CoherenceEstimate bell = predict_coherence_unscaled(0.5, 0.5);
  CHECK_THAT(bell.magnitude, WithinAbs(0.5, 1e-8));
  CHECK_FALSE(bell.report.scaled);

  PairOptions eight;
  eight.levels = 8;
  const CoherenceEstimate uniform = predict_coherence_unscaled(0.125, 0.125, eight);
  CHECK(uniform.magnitude == 0.0);
  CHECK(uniform.report.degenerate);

  // With six zero modes the exact maximal-entropy answer is sqrt(35)/18.
  const CoherenceEstimate w = predict_coherence_unscaled(1.0 / 3.0, 1.0 / 3.0, eight);
  CHECK(w.magnitude >= 0.31);
  CHECK(w.magnitude < 1.0 / 3.0);
  CHECK_THAT(w.magnitude, WithinAbs(std::sqrt(35.0) / 18.0, 1e-8));
  CHECK(predict_coherence_unscaled(1.0 / 3.0, 1.0 / 3.0).magnitude < 1.0 / 3.0);
}

TEST_CASE("damped Newton solves a small system inside a box") {
  const Residual2 f = [](const Vec2& x) -> Vec2 {
    return {x[0] * x[0] + x[1] * x[1] - 1.0, x[0] - x[1]};
  };
  const NewtonResult r = solve_newton2(f, {2.0, 0.5}, {{0.0, 0.0}, {5.0, 5.0}});
  CHECK(r.converged);
  CHECK_THAT(r.x[0], WithinAbs(std::sqrt(0.5), 1e-10));
  CHECK_THAT(r.x[1], WithinAbs(std::sqrt(0.5), 1e-10));

  // No root in the box: best effort, not converged.
  const NewtonResult none = solve_newton2(f, {2.0, 0.5}, {{2.0, 2.0}, {5.0, 5.0}});
  CHECK_FALSE(none.converged);
  CHECK(none.x[0] >= 2.0);
}
