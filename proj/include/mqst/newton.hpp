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

#ifndef MQST_NEWTON_HPP
#define MQST_NEWTON_HPP

#include <array>
#include <functional>
#include <span>

namespace mqst {

using Vec2 = std::array<double, 2>;

/// Residual callback for a system of two equations in two unknowns.
using Residual2 = std::function<Vec2(const Vec2&)>;

struct Box2 {
  Vec2 lower;
  Vec2 upper;
};

struct NewtonOptions {
  /// Converged once max |r_i| drops to this level.
  double tolerance = 1e-12;
  int max_iterations = 200;
  /// Relative central-difference step for the Jacobian.
  double fd_step = 1e-6;
};

struct NewtonResult {
  Vec2 x{};
  Vec2 residual{};
  double residual_max = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton (Levenberg-Marquardt) on a 2x2 system with a numerically
/// differenced Jacobian, confined to a box.
///
/// Iterates past the tolerance until the step stalls, so roots that sit on a
/// plateau (e.g. a vanishing multiplier) are driven as far as the residual
/// allows.
NewtonResult solve_newton2(const Residual2& f, Vec2 start, const Box2& box,
                           const NewtonOptions& opts = {});

/// solve_newton2 from `start`; on failure restarts from every grid point and
/// keeps the best result. `iterations` accumulates over all restarts.
NewtonResult solve_newton2_with_restarts(const Residual2& f, Vec2 start, const Box2& box,
                                         std::span<const double> grid0,
                                         std::span<const double> grid1,
                                         const NewtonOptions& opts = {});

}  // namespace mqst

#endif  // MQST_NEWTON_HPP
