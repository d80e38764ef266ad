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

#include "mqst/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mqst {

namespace {

constexpr double kMinDamping = 1e-12;
constexpr double kMaxDamping = 1e16;

double sum_sq(const Vec2& r) { return r[0] * r[0] + r[1] * r[1]; }

double max_abs(const Vec2& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

bool finite(const Vec2& r) { return std::isfinite(r[0]) && std::isfinite(r[1]); }

Vec2 clamp(Vec2 x, const Box2& box) {
  for (int k = 0; k < 2; ++k) x[k] = std::clamp(x[k], box.lower[k], box.upper[k]);
  return x;
}

// J[i][k] = d r_i / d x_k
using Mat2 = std::array<Vec2, 2>;

Mat2 jacobian(const Residual2& f, const Vec2& x, const Vec2& r0, const Box2& box, double rel) {
  Mat2 J{};
  for (int k = 0; k < 2; ++k) {
    const double h = rel * std::max(1.0, std::abs(x[k]));
    Vec2 lo = x, hi = x;
    hi[k] = std::min(x[k] + h, box.upper[k]);
    lo[k] = std::max(x[k] - h, box.lower[k]);
    const Vec2 rhi = hi[k] == x[k] ? r0 : f(hi);
    const Vec2 rlo = lo[k] == x[k] ? r0 : f(lo);
    const double span = hi[k] - lo[k];
    for (int i = 0; i < 2; ++i) J[i][k] = span > 0.0 ? (rhi[i] - rlo[i]) / span : 0.0;
  }
  return J;
}

}  // namespace

NewtonResult solve_newton2(const Residual2& f, Vec2 start, const Box2& box,
                           const NewtonOptions& opts) {
  NewtonResult out;
  Vec2 x = clamp(start, box);
  Vec2 r = f(x);
  if (!finite(r)) {
    out.x = x;
    out.residual = r;
    out.residual_max = std::numeric_limits<double>::infinity();
    return out;
  }
  double cost = sum_sq(r);
  double damping = 1e-6;

  int it = 0;
  for (; it < opts.max_iterations && cost > 0.0; ++it) {
    const Mat2 J = jacobian(f, x, r, box, opts.fd_step);
    // Normal equations of the LM step: (J^T J + mu D) d = -J^T r.
    const double a00 = J[0][0] * J[0][0] + J[1][0] * J[1][0];
    const double a01 = J[0][0] * J[0][1] + J[1][0] * J[1][1];
    const double a11 = J[0][1] * J[0][1] + J[1][1] * J[1][1];
    const double g0 = J[0][0] * r[0] + J[1][0] * r[1];
    const double g1 = J[0][1] * r[0] + J[1][1] * r[1];
    const double tiny = 1e-300;

    bool accepted = false;
    Vec2 xn{}, rn{};
    double costn = cost;
    while (damping <= kMaxDamping) {
      const double b00 = a00 + damping * std::max(a00, tiny);
      const double b11 = a11 + damping * std::max(a11, tiny);
      const double det = b00 * b11 - a01 * a01;
      Vec2 d{0.0, 0.0};
      if (det != 0.0 && std::isfinite(det)) {
        d[0] = -(b11 * g0 - a01 * g1) / det;
        d[1] = -(b00 * g1 - a01 * g0) / det;
      } else {
        // Fully degenerate normal matrix: fall back to the diagonal part.
        d[0] = b00 > 0.0 ? -g0 / b00 : 0.0;
        d[1] = b11 > 0.0 ? -g1 / b11 : 0.0;
      }
      xn = clamp({x[0] + d[0], x[1] + d[1]}, box);
      if (xn == x) break;
      rn = f(xn);
      costn = sum_sq(rn);
      if (finite(rn) && costn < cost) {
        accepted = true;
        damping = std::max(damping * 0.1, kMinDamping);
        break;
      }
      damping *= 10.0;
    }
    if (!accepted) break;

    const double step = std::max(std::abs(xn[0] - x[0]), std::abs(xn[1] - x[1]));
    const double scale = 1.0 + std::max(std::abs(x[0]), std::abs(x[1]));
    x = xn;
    r = rn;
    cost = costn;
    if (step <= 1e-15 * scale) {
      ++it;
      break;
    }
  }

  out.x = x;
  out.residual = r;
  out.residual_max = max_abs(r);
  out.iterations = it;
  out.converged = out.residual_max <= opts.tolerance;
  return out;
}

NewtonResult solve_newton2_with_restarts(const Residual2& f, Vec2 start, const Box2& box,
                                         std::span<const double> grid0,
                                         std::span<const double> grid1,
                                         const NewtonOptions& opts) {
  NewtonResult best = solve_newton2(f, start, box, opts);
  int total = best.iterations;
  for (double s0 : grid0) {
    for (double s1 : grid1) {
      if (best.converged) break;
      NewtonResult trial = solve_newton2(f, {s0, s1}, box, opts);
      total += trial.iterations;
      if (trial.residual_max < best.residual_max) best = trial;
    }
  }
  best.iterations = total;
  return best;
}

}  // namespace mqst
