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

// Superoperators on a D-dimensional system.
//
// A superoperator is stored by its left-right matrix M, a D^2 x D^2 matrix
// with M(l*D + j, m*D + k) = <l| A(|j><k|) |m>. The left-right action is the
// matrix product on operators flattened row-major; the ordinary action is the
// contraction [A(X)]_lm = sum_jk M(lj, mk) X_jk. Both are derived from the
// same storage, so sharp (which swaps them) is a pure index permutation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qinvert/operator_space.hpp"

namespace qinvert {

class SuperOperator {
 public:
  /// Throws DimensionError unless lr_matrix is dim^2 x dim^2.
  SuperOperator(int dim, ComplexMatrix lr_matrix);

  static SuperOperator zero(int dim);

  /// Reconstructs a linear map from its images of the outer-product basis.
  static SuperOperator from_ordinary_action(
      int dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& map);

  /// left (.) right, i.e. X -> left * X * right.
  static SuperOperator conjugation(const ComplexMatrix& left, const ComplexMatrix& right);

  int dim() const { return dim_; }
  const ComplexMatrix& lr_matrix() const { return lr_; }

  /// Matrix element A_{lj,mk}.
  Complex element(int l, int j, int m, int k) const {
    return lr_(l * dim_ + j, m * dim_ + k);
  }

  SuperOperator& operator+=(const SuperOperator& other);
  SuperOperator& operator-=(const SuperOperator& other);
  SuperOperator& operator*=(Complex scale);

  friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) { return a += b; }
  friend SuperOperator operator-(SuperOperator a, const SuperOperator& b) { return a -= b; }
  friend SuperOperator operator*(Complex s, SuperOperator a) { return a *= s; }
  friend SuperOperator operator*(SuperOperator a, Complex s) { return a *= s; }
  friend SuperOperator operator/(SuperOperator a, Complex s) { return a *= 1.0 / s; }

 private:
  int dim_;
  ComplexMatrix lr_;
};

/// Elementwise max |a - b|. Throws DimensionError on dim mismatch.
double max_abs_diff(const SuperOperator& a, const SuperOperator& b);

ComplexMatrix apply_ordinary(const SuperOperator& s, const ComplexMatrix& a);
ComplexMatrix apply_leftright(const SuperOperator& s, const ComplexMatrix& a);

/// A^#_{lj,mk} = A_{lm,jk}. Exchanges the ordinary and left-right actions.
SuperOperator sharp(const SuperOperator& s);

/// Conjugate transpose of the left-right matrix.
SuperOperator adjoint_leftright(const SuperOperator& s);

/// Adjoint under the ordinary action: tr([A^x(B)]^dag X) = tr(B^dag A(X)).
SuperOperator adjoint_cross(const SuperOperator& s);

/// outer o inner: X -> outer(inner(X)).
SuperOperator compose_ordinary(const SuperOperator& outer, const SuperOperator& inner);

/// Left-right matrix product.
SuperOperator multiply_leftright(const SuperOperator& left, const SuperOperator& right);

/// Superoperator on the D1*D2 joint system with (a (x) b)(X (x) Y) = a(X) (x) b(Y).
SuperOperator tensor_superop(const SuperOperator& a, const SuperOperator& b);

/// eta * IdentityOrdinary + nu * IdentityLR, the unitarily covariant,
/// Hermiticity-preserving two-parameter family.
struct FamilyParams {
  int dim = 2;
  double eta = 0.0;
  double nu = 0.0;

  /// Left-right eigenvalue on I/sqrt(D).
  double mu() const { return dim * eta + nu; }

  static FamilyParams from_mu(int dim, double mu, double nu) {
    return {dim, (mu - nu) / dim, nu};
  }
  /// Trace-preserving member: eta = 1 - D nu.
  static FamilyParams trace_preserving(int dim, double nu) {
    return {dim, 1.0 - dim * nu, nu};
  }
};

namespace kind {
struct IdentityOrdinary {};
struct IdentityLR {};
struct TracefreeProj {};
struct SymProj {};
struct AntisymProj {};
struct Transpose {};
struct Inverter {
  double nu = 1.0;
};
struct InverterTP {};
struct UniversalNOT {};
struct GAV {};
struct FamilyTP {
  double nu = 0.0;
};
struct Family {
  double eta = 0.0;
  double nu = 0.0;
};
struct UnitaryConj {
  ComplexMatrix u;
};
}  // namespace kind

using SpecialKind =
    std::variant<kind::IdentityOrdinary, kind::IdentityLR, kind::TracefreeProj, kind::SymProj,
                 kind::AntisymProj, kind::Transpose, kind::Inverter, kind::InverterTP,
                 kind::UniversalNOT, kind::GAV, kind::FamilyTP, kind::Family,
                 kind::UnitaryConj>;

/// Builds a named superoperator in dimension D >= 2.
///
///   IdentityOrdinary  I(.)I, the unit of composition
///   IdentityLR        unit of the left-right product; ordinary action tr(A) I
///   TracefreeProj     sum over SU(D) generators lambda (.) lambda
///   SymProj/AntisymProj  projectors onto symmetric/antisymmetric operators
///   Transpose         A -> A^T in the computational basis
///   Inverter(nu)      nu (IdentityLR - IdentityOrdinary); A -> nu (tr(A) I - A)
///   InverterTP        Inverter(1/(D-1))
///   UniversalNOT      D/(D^2-1) TracefreeProj; rho -> (D I - rho)/(D^2-1)
///   GAV               I/D + TracefreeProj/(D+1); rho -> (I + rho)/(D+1)
///   FamilyTP(nu)      (1 - D nu) IdentityOrdinary + nu IdentityLR
///   Family(eta, nu)   eta IdentityOrdinary + nu IdentityLR
///   UnitaryConj(U)    U (.) U^dagger
///
/// Throws DomainError for D < 2, non-finite parameters or non-unitary U.
SuperOperator special(const SpecialKind& kind, int dim);

SuperOperator family(const FamilyParams& params);

std::string kind_name(const SpecialKind& kind);

/// Resolves a kind by its name as printed by kind_name. Parameterized kinds
/// read nu/eta from the optionals (Inverter defaults to nu = 1). UnitaryConj
/// is not constructible by name. Throws std::invalid_argument for unknown
/// names or missing parameters.
SpecialKind parse_kind(std::string_view name, std::optional<double> nu = std::nullopt,
                       std::optional<double> eta = std::nullopt);

bool is_trace_preserving(const SuperOperator& s, double tol = kTolerance);

struct CpResult {
  bool completely_positive = false;
  /// Left-right eigenvalues, ascending.
  std::vector<double> spectrum;
};

/// Diagonalizes the (symmetrized) left-right matrix. Throws DomainError when
/// the anti-Hermitian part exceeds tol.
CpResult is_completely_positive(const SuperOperator& s, double tol = kTolerance);

/// Closed-form positivity of FamilyTP(nu): 0 <= nu <= 1/(D-1).
bool is_positive_family(double nu, int dim);

/// Closed-form complete positivity of FamilyTP(nu): 0 <= nu <= D/(D^2-1).
bool is_cp_family(double nu, int dim);

/// Sampled positivity: S(|psi><psi|) is Hermitian with eigenvalues >= -tol for
/// `trials` Haar-random pure inputs. A necessary condition only.
bool is_positive_sampled(const SuperOperator& s, int trials, std::uint64_t seed,
                         double tol = kTolerance);

bool is_leftright_hermitian(const SuperOperator& s, double tol = kTolerance);

/// Checks A(|j><k|) == A(|k><j|)^dagger for every j, k.
bool preserves_hermiticity(const SuperOperator& s, double tol = kTolerance);

/// Sampled covariance test against `trials` Haar-random unitaries.
bool commutes_with_unitaries(const SuperOperator& s, int trials = 20, std::uint64_t seed = 0,
                             double tol = kTolerance);

}  // namespace qinvert
