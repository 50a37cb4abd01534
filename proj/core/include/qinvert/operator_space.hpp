// Copyright 2026 The qinvert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Operators on a D-dimensional Hilbert space viewed as vectors in a
// D^2-dimensional inner-product space.
//
// Conventions used throughout the library:
//   * operator basis index alpha = j*D + k for tau_jk = |j><k| (row-major);
//   * bipartite index i*D2 + j for |e_i> (x) |f_j>.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qinvert/random.hpp"

namespace qinvert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Absolute tolerance for identity checks on unit-normalized inputs.
inline constexpr double kTolerance = 1e-10;

/// Subsystem dimensions of a bipartite system.
struct Dims {
  int first = 0;
  int second = 0;

  int total() const { return first * second; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

/// Largest entrywise modulus; 0 for empty matrices.
double max_abs(const ComplexMatrix& m);

/// Largest entrywise modulus of a - b. Throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_square(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kTolerance);

/// Hermitian, eigenvalues >= -tol and unit trace within tol.
bool is_density(const ComplexMatrix& rho, double tol = kTolerance);

bool is_unitary(const ComplexMatrix& u, double tol = kTolerance);

/// Hilbert-Schmidt inner product (A|B) = tr(A^dagger B).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ordered orthonormal operator basis.
struct OperatorBasis {
  int dim = 0;
  std::vector<ComplexMatrix> elements;

  /// max_{alpha,beta} |(e_alpha|e_beta) - delta_alpha,beta|
  double orthonormality_residual() const;
  bool is_orthonormal(double tol = 1e-12) const {
    return orthonormality_residual() <= tol;
  }
};

/// tau_jk = |j><k| for D >= 2, ordered by alpha = j*D + k.
OperatorBasis outer_product_basis(int dim);

/// The D^2 - 1 tracefree Hermitian generators of SU(D), orthonormal under
/// tr(a b). Order: D-1 diagonal, then D(D-1)/2 symmetric off-diagonal, then
/// D(D-1)/2 antisymmetric (imaginary) off-diagonal; pairs j<k are taken in
/// lexicographic order.
std::vector<ComplexMatrix> su_generators(int dim);

/// su_generators(D) followed by I/sqrt(D).
OperatorBasis generator_basis(int dim);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Haar-distributed unit vector: a normalized standard complex Gaussian.
ComplexVector haar_random_vector(int dim, Rng& rng);

/// |psi><psi| for a Haar-random |psi>, deterministic in `seed`.
ComplexMatrix haar_random_state(int dim, std::uint64_t seed);

/// Haar-random unitary via QR of a complex Ginibre matrix with phase fix.
ComplexMatrix haar_random_unitary(int dim, Rng& rng);

/// Random density matrix G G^dagger / tr(G G^dagger), G a dim x rank Ginibre
/// matrix. rank <= 0 means full rank.
ComplexMatrix random_density(int dim, Rng& rng, int rank = 0);

/// Random normalized joint pure state of total dimension `dim`.
ComplexVector random_pure(int dim, Rng& rng);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Reduced operator on subsystem `keep`. Linear in rho; rho need not be a
/// valid density. Throws DimensionError if dims do not factor rho.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Subsystem keep);

/// Computational basis vector |k> in dimension dim.
ComplexVector basis_vector(int dim, int k);

}  // namespace qinvert
