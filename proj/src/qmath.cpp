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

#include "mqst/qmath.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace mqst {

namespace {

constexpr double kEigenHermitianTol = 1e-10;

// Eigen's tridiagonal QR gives up after 30 sweeps per eigenvalue.
constexpr int kEigenSweepsPerValue = 30;

void require_same_dimension(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(msg.str());
  }
}

RealVector eigenvalues_only(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    const int limit = kEigenSweepsPerValue * static_cast<int>(m.rows());
    throw ConvergenceError("hermitian eigensolver did not converge within " +
                               std::to_string(limit) + " iterations",
                           limit, std::nan(""));
  }
  return solver.eigenvalues();
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  if (!is_hermitian(m_, kHermitianTol)) {
    throw NotHermitianError("density matrix is not Hermitian");
  }
  // Mirror the upper triangle so Hermiticity holds bit-exactly.
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    m_(i, i) = Complex(m_(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < m_.cols(); ++j) m_(j, i) = std::conj(m_(i, j));
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr << " differs from 1";
    throw Error(msg.str());
  }
}

DensityMatrix DensityMatrix::projector(const ComplexVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

bool DensityMatrix::is_positive() const {
  return eigenvalues_only(m_).minCoeff() >= -kPositivityTol;
}

StateVector::StateVector(std::size_t qubit_count, ComplexVector amplitudes)
    : n_(qubit_count), amps_(std::move(amplitudes)) {
  if (qubit_count == 0 || qubit_count > 30) {
    throw DimensionError("qubit count must be in [1, 30]");
  }
  if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_)) {
    throw DimensionError("state vector length must be 2^n");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
    throw Error("state vector is not normalized");
  }
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw Error("cannot normalize the zero vector");
  const auto size = static_cast<std::size_t>(amplitudes.size());
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  return StateVector(n, amplitudes / norm);
}

StateVector StateVector::basis(std::size_t qubit_count, std::size_t index) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << qubit_count));
  if (index >= static_cast<std::size_t>(v.size())) throw DimensionError("basis index out of range");
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(qubit_count, std::move(v));
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: matrix is not square");
  if (!is_hermitian(m, kEigenHermitianTol)) {
    throw NotHermitianError("hermitian_eigen: not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    const int limit = kEigenSweepsPerValue * static_cast<int>(m.rows());
    throw ConvergenceError("hermitian_eigen: no convergence within " + std::to_string(limit) +
                               " iterations",
                           limit, std::nan(""));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dimension(a.dimension(), b.dimension(), "trace_distance");
  const ComplexMatrix diff = a.matrix() - b.matrix();
  return 0.5 * eigenvalues_only(diff).cwiseAbs().sum();
}

double fidelity_pure(const StateVector& target, const DensityMatrix& rho) {
  require_same_dimension(target.dimension(), rho.dimension(), "fidelity_pure");
  const ComplexVector& psi = target.amplitudes();
  const Complex f = psi.dot(rho.matrix() * psi);  // dot() conjugates the left side
  if (std::abs(f.imag()) > 1e-10) {
    throw Error("fidelity_pure: expectation has an imaginary part");
  }
  return f.real();
}

EntropyResult von_neumann_entropy(const DensityMatrix& rho) {
  // DensityMatrix already guarantees the trace, but keep the contract local.
  const double tr = rho.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-6) throw Error("von_neumann_entropy: trace deviates from 1");

  const RealVector w = eigenvalues_only(rho.matrix());
  EntropyResult out;
  double kept = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (w(k) < 0.0) {
      out.clamped_mass += -w(k);
    } else {
      kept += w(k);
    }
  }
  if (kept <= 0.0) throw Error("von_neumann_entropy: no non-negative spectrum left");
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (w(k) <= 0.0) continue;
    const double p = w(k) / kept;
    out.value -= p * std::log2(p);
  }
  if (out.value < 0.0) out.value = 0.0;  // -0.0 and last-ulp noise
  return out;
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum_ij rho_ij rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

}  // namespace mqst
