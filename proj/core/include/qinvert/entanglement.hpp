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

// Bipartite pure and mixed states, Schmidt decomposition and the
// I-concurrence family of entanglement quantities.

#include <cstdint>
#include <vector>

#include "qinvert/operator_space.hpp"

namespace qinvert {

enum class StateKind { Pure, Density };

/// A joint state of a D1 x D2 system. Joint index i*D2 + j for |e_i>|f_j>.
class BipartiteState {
 public:
  /// Throws InvalidStateError unless |psi| = 1 within tol; DimensionError if
  /// the length is not D1*D2.
  static BipartiteState pure(Dims dims, ComplexVector psi, double tol = 1e-12);

  /// Throws InvalidStateError unless is_density(rho, tol).
  static BipartiteState density(Dims dims, ComplexMatrix rho, double tol = kTolerance);

  Dims dims() const { return dims_; }
  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::Pure; }

  /// The state vector. Throws InvalidStateError for density states.
  const ComplexVector& vector() const;

  /// |psi><psi| for pure states, rho otherwise.
  ComplexMatrix density_matrix() const;

  ComplexMatrix marginal(Subsystem keep) const;

 private:
  BipartiteState(Dims dims, StateKind kind, ComplexVector psi, ComplexMatrix rho)
      : dims_(dims), kind_(kind), psi_(std::move(psi)), rho_(std::move(rho)) {}

  Dims dims_;
  StateKind kind_;
  ComplexVector psi_;
  ComplexMatrix rho_;
};

/// Psi = sum_j a_j |e_j> (x) |f_j> with a_j > 0 descending.
struct SchmidtDecomposition {
  std::vector<double> coefficients;
  std::vector<ComplexVector> left_basis;
  std::vector<ComplexVector> right_basis;

  ComplexVector reconstruct() const;
};

/// SVD of the D1 x D2 coefficient matrix. Coefficients below 1e-12 are
/// dropped. The first nonzero component of each left vector is made real
/// positive; ties in the coefficients are ordered by comparing left vectors
/// component by component (real part, then imaginary part).
SchmidtDecomposition schmidt_decompose(const BipartiteState& psi);

/// tr(rho^2). Throws InvalidStateError unless rho is a density matrix.
double purity(const ComplexMatrix& rho);

/// sqrt(2 nu1 nu2 (1 - tr rho_A^2)).
double iconcurrence_pure(const BipartiteState& psi, double nu1 = 1.0, double nu2 = 1.0);

/// sqrt(4 nu1 nu2 sum_{j<k} a_j^2 a_k^2).
double iconcurrence_schmidt(const SchmidtDecomposition& schmidt, double nu1 = 1.0,
                            double nu2 = 1.0);

/// sqrt(<Psi| (S_D1 (x) S_D2)(|Psi><Psi|) |Psi>) with both inverters at nu = 1,
/// evaluated through the tensor-product superoperator.
double iconcurrence_via_inverter(const BipartiteState& psi);

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y) for a two-qubit rho.
ComplexMatrix spin_flip_tilde(const BipartiteState& rho);

/// |<Psi| sigma_y (x) sigma_y |Psi^*>| for a two-qubit pure state.
double qubit_concurrence_spinflip(const BipartiteState& psi);

/// 1 - tr(rho_A^2) - tr(rho_B^2) + tr(rho_AB^2); nonnegative for every joint
/// density and equal to C^2 on pure states.
double mixed_inverter_quantity(const BipartiteState& rho);

struct EnsembleMember {
  double probability = 0.0;
  ComplexVector state;  ///< normalized
};

struct MixedConcurrenceResult {
  /// Best average I-concurrence found; an upper bound on the ensemble minimum.
  double value = 0.0;
  std::vector<EnsembleMember> decomposition;
  int restarts = 0;
  int best_restart = 0;
};

/// sum_k p_k |psi_k><psi_k|
ComplexMatrix ensemble_density(const std::vector<EnsembleMember>& ensemble);

/// Minimizes sum_k p_k C(psi_k) over decompositions rho = sum_k p_k |psi_k><psi_k|.
///
/// Decompositions are the eigenensemble mixed by an m x r isometry (r the rank
/// of rho, m = r^2), explored by pairwise Givens rotations with phases. Each
/// restart starts from an independent random isometry (restart 0 starts from
/// the eigenensemble itself) and descends by coordinate search with a
/// shrinking step. Restart k uses derive_seed(seed, k), so the result is
/// nonincreasing in `restarts`; ties keep the lowest restart index.
MixedConcurrenceResult mixed_iconcurrence_min(const BipartiteState& rho, int restarts,
                                              std::uint64_t seed);

}  // namespace qinvert
