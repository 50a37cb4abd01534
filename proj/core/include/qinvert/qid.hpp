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

// Simulation of the three-qudit quantum information distributor (QID):
// qudit A is coupled to ancillas B and C, prepared in
//   |Phi>_BC = xi1 |Xi_00> + xi2 |x_0> (x) |p_0>,
// by U_ABC = exp[-i (x_C - x_B) p_A] exp[-i x_A (p_B + p_C)].
// Joint index ordering is a*D^2 + b*D + c.

#include <cstdint>
#include <span>

#include "qinvert/entanglement.hpp"
#include "qinvert/operator_space.hpp"
#include "qinvert/superoperator.hpp"

namespace qinvert {

/// Largest D for which the D^3-dimensional evolution is supported
/// (a D^3 x D^3 complex density matrix is 4 MiB at D = 8).
inline constexpr int kMaxQidDim = 8;

/// Position/momentum frame of a qudit. x is diagonal in the computational
/// basis; |p_l> = sum_k e^{2 pi i k l / D} / sqrt(D) |x_k>. Both operators have
/// eigenvalues k sqrt(2 pi / D).
struct QuditFrame {
  int dim = 0;
  ComplexMatrix dft;          ///< column l is |p_l> in the x basis
  std::vector<double> spectrum;
  ComplexMatrix x_op;
  ComplexMatrix p_op;

  ComplexVector x_state(int k) const;
  ComplexVector p_state(int l) const;
};

QuditFrame build_frame(int dim);

enum class Axis { X, P };

/// R_x(n) = exp(-i x_n p) or R_p(n) = exp(i p_n x), built as phases in the
/// eigenbasis of the exponentiated operator. Accepts 0 <= n <= D (n = D is the
/// full cycle).
ComplexMatrix shift_operator(const QuditFrame& frame, Axis axis, int n);

/// |Xi_mn> = D^{-1/2} sum_k e^{2 pi i m k / D} |x_k> (x) |x_{k+n}>.
BipartiteState entangled_basis_state(const QuditFrame& frame, int m, int n);

/// Ancilla amplitudes. xi2 = a + ib must satisfy a^2 (D^2-1)/D^2 + b^2 <= 1.
struct QidSetup {
  int dim = 0;
  Complex xi2;
  double xi1 = 0.0;

  /// |xi1^2 + |xi2|^2 + 2 a xi1 / D - 1|
  double normalization_residual() const;
};

/// xi1 = -a/D + sqrt(1 - b^2 - a^2 (D^2-1)/D^2). Throws DomainError when xi2
/// lies outside the ellipse (xi1 would be complex) or D is out of range.
QidSetup make_setup(int dim, Complex xi2);

struct PreparedAncilla {
  QidSetup setup;
  BipartiteState phi;
};

PreparedAncilla prepare_phi(int dim, Complex xi2);

/// xi2 = D / sqrt(D^2 - 1), the real point maximizing |xi2|^2.
Complex optimal_xi2(int dim);

/// The D^3 x D^3 interaction unitary. 2 <= D <= kMaxQidDim.
ComplexMatrix build_uabc(int dim);

enum class Qudit { A, B, C };

struct QidOutputs {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;

  const ComplexMatrix& operator[](Qudit q) const;
};

/// Evolves rho_in (x) |Phi><Phi| by U_ABC and returns the three one-qudit
/// marginals. Throws InvalidStateError if rho_in is not a density matrix.
QidOutputs run_qid(int dim, Complex xi2, const ComplexMatrix& rho_in);

/// Same evolution on an arbitrary operator (the map is linear in the input).
QidOutputs run_qid_linear(const ComplexMatrix& uabc, const QidSetup& setup,
                          const ComplexMatrix& input);

/// Predicted marginals:
///   A: (1 - |xi2|^2) rho + |xi2|^2 I/D
///   B: (1 - xi1^2) rho + xi1^2 I/D
///   C: xi1 (xi2 + xi2^*)/D rho^T + (xi1^2 + |xi2|^2)/D I
QidOutputs qid_closed_form(const QidSetup& setup, const ComplexMatrix& rho);

/// Channel induced on one qudit, reconstructed by feeding every |j><k|
/// through the circuit.
SuperOperator qid_channel(int dim, Complex xi2, Qudit which);

/// (D I - rho)/(D^2 - 1). Throws InvalidStateError unless rho is a density.
ComplexMatrix universal_not_apply(const ComplexMatrix& rho);

/// D |psi><psi| (.) |psi><psi| averaged over the given unit vectors.
SuperOperator gav_from_states(int dim, std::span<const ComplexVector> states);

/// Monte Carlo estimate of GAV from `samples` Haar-random states. Samples are
/// drawn in fixed-size shards, shard s seeded by derive_seed(seed, s), and
/// accumulated in shard order.
SuperOperator gav_monte_carlo(int dim, int samples, std::uint64_t seed);

/// InverterTP o GAV: isotropic measurement followed by state inversion.
SuperOperator povm_inversion_channel(int dim);

}  // namespace qinvert
