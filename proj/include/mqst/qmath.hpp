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

#ifndef MQST_QMATH_HPP
#define MQST_QMATH_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mqst {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

/// Raised when an iterative numerical method fails to converge.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, int iterations, double best_residual)
      : Error(what), iterations_(iterations), best_residual_(best_residual) {}
  int iterations() const noexcept { return iterations_; }
  double best_residual() const noexcept { return best_residual_; }

 private:
  int iterations_;
  double best_residual_;
};

bool is_hermitian(const ComplexMatrix& m, double tol);

/// Hermitian N x N matrix with unit trace.
///
/// Construction checks Hermiticity (1e-12, mirrored exactly afterwards) and
/// that the trace is real and equal to one within 1e-9. Positivity is not
/// enforced here because partially assembled reconstructions are generally
/// indefinite; finalized matrices can be checked with is_positive().
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kPositivityTol = 1e-9;

  explicit DensityMatrix(ComplexMatrix entries);

  /// Pure-state projector |psi><psi|.
  static DensityMatrix projector(const ComplexVector& psi);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Smallest eigenvalue is at least -kPositivityTol.
  bool is_positive() const;

 private:
  ComplexMatrix m_;
};

/// Normalized amplitude vector of an n-qubit pure state.
class StateVector {
 public:
  static constexpr double kNormTol = 1e-12;

  StateVector(std::size_t qubit_count, ComplexVector amplitudes);

  /// Rescales arbitrary non-zero amplitudes to unit norm.
  static StateVector normalized(ComplexVector amplitudes);
  static StateVector basis(std::size_t qubit_count, std::size_t index);

  std::size_t qubit_count() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  DensityMatrix density() const { return DensityMatrix::projector(amps_); }

 private:
  std::size_t n_;
  ComplexVector amps_;
};

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, vectors.col(k) pairs with values(k)
};

/// Dense Hermitian eigendecomposition. Throws NotHermitianError when m deviates
/// from Hermitian by more than 1e-10 and ConvergenceError if the QR sweep stalls.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// (1/2) sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// <psi|rho|psi> for a pure target.
double fidelity_pure(const StateVector& target, const DensityMatrix& rho);

struct EntropyResult {
  double value = 0.0;         // bits
  double clamped_mass = 0.0;  // sum of |w| over eigenvalues clamped to zero
};

/// von Neumann entropy in bits. Negative eigenvalues are clamped to zero and
/// the remainder renormalized; the discarded mass is reported.
EntropyResult von_neumann_entropy(const DensityMatrix& rho);

/// Re Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double angle);

}  // namespace mqst

#endif  // MQST_QMATH_HPP
