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

#include "qinvert/superoperator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "qinvert/errors.hpp"

namespace qinvert {
namespace {

void require_dim(int dim) {
  if (dim < 2) {
    throw DomainError("superoperator dimension must be >= 2, got " + std::to_string(dim));
  }
}

void require_same_dim(const SuperOperator& a, const SuperOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

void require_operator(const SuperOperator& s, const ComplexMatrix& a, const char* what) {
  if (a.rows() != s.dim() || a.cols() != s.dim()) {
    throw DimensionError(std::string(what) + ": operator is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + ", superoperator dimension is " +
                         std::to_string(s.dim()));
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

ComplexVector flatten(const ComplexMatrix& a) {
  const auto d = a.rows();
  ComplexVector v(d * a.cols());
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      v(j * a.cols() + k) = a(j, k);
    }
  }
  return v;
}

ComplexMatrix unflatten(const ComplexVector& v, int dim) {
  ComplexMatrix a(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      a(j, k) = v(j * dim + k);
    }
  }
  return a;
}

SuperOperator projector_sum(int dim, const std::vector<ComplexMatrix>& ops) {
  const int n = dim * dim;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& op : ops) {
    const ComplexVector v = flatten(op);
    m += v * v.adjoint();
  }
  return SuperOperator(dim, std::move(m));
}

SuperOperator identity_ordinary(int dim) {
  const int n = dim * dim;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int l = 0; l < dim; ++l) {
    for (int k = 0; k < dim; ++k) {
      m(l * dim + l, k * dim + k) = 1.0;
    }
  }
  return SuperOperator(dim, std::move(m));
}

SuperOperator identity_leftright(int dim) {
  const int n = dim * dim;
  return SuperOperator(dim, ComplexMatrix::Identity(n, n));
}

SuperOperator transpose(int dim) {
  const int n = dim * dim;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      // A_{lj,mk} = delta_lk delta_jm
      m(k * dim + j, j * dim + k) = 1.0;
    }
  }
  return SuperOperator(dim, std::move(m));
}

SuperOperator tracefree_projector(int dim) { return projector_sum(dim, su_generators(dim)); }

bool is_real_operator(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

SuperOperator symmetric_projector(int dim) {
  std::vector<ComplexMatrix> ops;
  ops.push_back(ComplexMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
  for (auto& g : su_generators(dim)) {
    if (is_real_operator(g)) {
      ops.push_back(std::move(g));
    }
  }
  return projector_sum(dim, ops);
}

SuperOperator antisymmetric_projector(int dim) {
  std::vector<ComplexMatrix> ops;
  for (auto& g : su_generators(dim)) {
    if (!is_real_operator(g)) {
      ops.push_back(std::move(g));
    }
  }
  return projector_sum(dim, ops);
}

SuperOperator inverter(int dim, double nu) {
  require_finite(nu, "nu");
  return nu * (identity_leftright(dim) - identity_ordinary(dim));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

SuperOperator::SuperOperator(int dim, ComplexMatrix lr_matrix) : dim_(dim), lr_(std::move(lr_matrix)) {
  if (dim < 1 || lr_.rows() != dim * dim || lr_.cols() != dim * dim) {
    throw DimensionError("SuperOperator: left-right matrix must be " + std::to_string(dim * dim) +
                         "x" + std::to_string(dim * dim));
  }
}

SuperOperator SuperOperator::zero(int dim) {
  return SuperOperator(dim, ComplexMatrix::Zero(dim * dim, dim * dim));
}

SuperOperator SuperOperator::from_ordinary_action(
    int dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& map) {
  const int n = dim * dim;
  ComplexMatrix m(n, n);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      ComplexMatrix tau = ComplexMatrix::Zero(dim, dim);
      tau(j, k) = 1.0;
      const ComplexMatrix image = map(tau);
      if (image.rows() != dim || image.cols() != dim) {
        throw DimensionError("from_ordinary_action: map changed the operator dimension");
      }
      for (int l = 0; l < dim; ++l) {
        for (int mm = 0; mm < dim; ++mm) {
          m(l * dim + j, mm * dim + k) = image(l, mm);
        }
      }
    }
  }
  return SuperOperator(dim, std::move(m));
}

SuperOperator SuperOperator::conjugation(const ComplexMatrix& left, const ComplexMatrix& right) {
  if (!is_square(left) || left.rows() != right.rows() || left.cols() != right.cols()) {
    throw DimensionError("conjugation: operands must be square and of equal dimension");
  }
  const int dim = static_cast<int>(left.rows());
  const int n = dim * dim;
  ComplexMatrix m(n, n);
  for (int l = 0; l < dim; ++l) {
    for (int j = 0; j < dim; ++j) {
      for (int mm = 0; mm < dim; ++mm) {
        for (int k = 0; k < dim; ++k) {
          m(l * dim + j, mm * dim + k) = left(l, j) * right(k, mm);
        }
      }
    }
  }
  return SuperOperator(dim, std::move(m));
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  require_same_dim(*this, other, "operator+");
  lr_ += other.lr_;
  return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& other) {
  require_same_dim(*this, other, "operator-");
  lr_ -= other.lr_;
  return *this;
}

SuperOperator& SuperOperator::operator*=(Complex scale) {
  lr_ *= scale;
  return *this;
}

double max_abs_diff(const SuperOperator& a, const SuperOperator& b) {
  require_same_dim(a, b, "max_abs_diff");
  return max_abs(a.lr_matrix() - b.lr_matrix());
}

ComplexMatrix apply_ordinary(const SuperOperator& s, const ComplexMatrix& a) {
  require_operator(s, a, "apply_ordinary");
  const int d = s.dim();
  const ComplexMatrix& m = s.lr_matrix();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  // [A(X)]_lm = sum_jk M(l*d + j, m*d + k) X_jk, walked column by column
  for (int mm = 0; mm < d; ++mm) {
    for (int k = 0; k < d; ++k) {
      const Complex* col = m.col(mm * d + k).data();
      for (int j = 0; j < d; ++j) {
        const Complex x = a(j, k);
        if (x == Complex(0.0)) continue;
        for (int l = 0; l < d; ++l) {
          out(l, mm) += col[l * d + j] * x;
        }
      }
    }
  }
  return out;
}

ComplexMatrix apply_leftright(const SuperOperator& s, const ComplexMatrix& a) {
  require_operator(s, a, "apply_leftright");
  return unflatten(s.lr_matrix() * flatten(a), s.dim());
}

SuperOperator sharp(const SuperOperator& s) {
  const int d = s.dim();
  const int n = d * d;
  ComplexMatrix m(n, n);
  for (int l = 0; l < d; ++l) {
    for (int j = 0; j < d; ++j) {
      for (int mm = 0; mm < d; ++mm) {
        for (int k = 0; k < d; ++k) {
          m(l * d + j, mm * d + k) = s.element(l, mm, j, k);
        }
      }
    }
  }
  return SuperOperator(d, std::move(m));
}

SuperOperator adjoint_leftright(const SuperOperator& s) {
  return SuperOperator(s.dim(), s.lr_matrix().adjoint());
}

SuperOperator adjoint_cross(const SuperOperator& s) {
  const int d = s.dim();
  const int n = d * d;
  ComplexMatrix m(n, n);
  for (int l = 0; l < d; ++l) {
    for (int j = 0; j < d; ++j) {
      for (int mm = 0; mm < d; ++mm) {
        for (int k = 0; k < d; ++k) {
          m(l * d + j, mm * d + k) = std::conj(s.element(j, l, k, mm));
        }
      }
    }
  }
  return SuperOperator(d, std::move(m));
}

SuperOperator compose_ordinary(const SuperOperator& outer, const SuperOperator& inner) {
  require_same_dim(outer, inner, "compose_ordinary");
  return sharp(multiply_leftright(sharp(outer), sharp(inner)));
}

SuperOperator multiply_leftright(const SuperOperator& left, const SuperOperator& right) {
  require_same_dim(left, right, "multiply_leftright");
  return SuperOperator(left.dim(), left.lr_matrix() * right.lr_matrix());
}

SuperOperator tensor_superop(const SuperOperator& a, const SuperOperator& b) {
  const int d1 = a.dim();
  const int d2 = b.dim();
  const int d = d1 * d2;
  ComplexMatrix m(d * d, d * d);
  for (int m1 = 0; m1 < d1; ++m1)
    for (int k1 = 0; k1 < d1; ++k1)
      for (int m2 = 0; m2 < d2; ++m2)
        for (int k2 = 0; k2 < d2; ++k2) {
          const int col = (m1 * d2 + m2) * d + (k1 * d2 + k2);
          Complex* out = m.col(col).data();
          const Complex* acol = a.lr_matrix().col(m1 * d1 + k1).data();
          const Complex* bcol = b.lr_matrix().col(m2 * d2 + k2).data();
          for (int l1 = 0; l1 < d1; ++l1)
            for (int l2 = 0; l2 < d2; ++l2)
              for (int j1 = 0; j1 < d1; ++j1) {
                const Complex x = acol[l1 * d1 + j1];
                const int row_base = (l1 * d2 + l2) * d + j1 * d2;
                for (int j2 = 0; j2 < d2; ++j2) {
                  out[row_base + j2] = x * bcol[l2 * d2 + j2];
                }
              }
        }
  return SuperOperator(d, std::move(m));
}

SuperOperator family(const FamilyParams& params) {
  require_dim(params.dim);
  require_finite(params.eta, "eta");
  require_finite(params.nu, "nu");
  return params.eta * identity_ordinary(params.dim) + params.nu * identity_leftright(params.dim);
}

SuperOperator special(const SpecialKind& which, int dim) {
  require_dim(dim);
  const double d = dim;
  return std::visit(
      Overloaded{
          [&](const kind::IdentityOrdinary&) { return identity_ordinary(dim); },
          [&](const kind::IdentityLR&) { return identity_leftright(dim); },
          [&](const kind::TracefreeProj&) { return tracefree_projector(dim); },
          [&](const kind::SymProj&) { return symmetric_projector(dim); },
          [&](const kind::AntisymProj&) { return antisymmetric_projector(dim); },
          [&](const kind::Transpose&) { return transpose(dim); },
          [&](const kind::Inverter& k) { return inverter(dim, k.nu); },
          [&](const kind::InverterTP&) { return inverter(dim, 1.0 / (d - 1.0)); },
          [&](const kind::UniversalNOT&) { return (d / (d * d - 1.0)) * tracefree_projector(dim); },
          [&](const kind::GAV&) {
            return (1.0 / d) * identity_ordinary(dim) + (1.0 / (d + 1.0)) * tracefree_projector(dim);
          },
          [&](const kind::FamilyTP& k) { return family(FamilyParams::trace_preserving(dim, k.nu)); },
          [&](const kind::Family& k) { return family(FamilyParams{dim, k.eta, k.nu}); },
          [&](const kind::UnitaryConj& k) {
            if (k.u.rows() != dim || k.u.cols() != dim) {
              throw DomainError("UnitaryConj: U must be " + std::to_string(dim) + "x" +
                                std::to_string(dim));
            }
            if (!is_unitary(k.u, kTolerance)) {
              throw DomainError("UnitaryConj: U is not unitary");
            }
            return SuperOperator::conjugation(k.u, k.u.adjoint());
          },
      },
      which);
}

std::string kind_name(const SpecialKind& which) {
  return std::visit(Overloaded{
                        [](const kind::IdentityOrdinary&) { return std::string("IdentityOrdinary"); },
                        [](const kind::IdentityLR&) { return std::string("IdentityLR"); },
                        [](const kind::TracefreeProj&) { return std::string("TracefreeProj"); },
                        [](const kind::SymProj&) { return std::string("SymProj"); },
                        [](const kind::AntisymProj&) { return std::string("AntisymProj"); },
                        [](const kind::Transpose&) { return std::string("Transpose"); },
                        [](const kind::Inverter&) { return std::string("Inverter"); },
                        [](const kind::InverterTP&) { return std::string("InverterTP"); },
                        [](const kind::UniversalNOT&) { return std::string("UniversalNOT"); },
                        [](const kind::GAV&) { return std::string("GAV"); },
                        [](const kind::FamilyTP&) { return std::string("FamilyTP"); },
                        [](const kind::Family&) { return std::string("Family"); },
                        [](const kind::UnitaryConj&) { return std::string("UnitaryConj"); },
                    },
                    which);
}

SpecialKind parse_kind(std::string_view name, std::optional<double> nu, std::optional<double> eta) {
  const std::string key = lower(name);
  auto need_nu = [&]() {
    if (!nu) {
      throw std::invalid_argument("kind '" + std::string(name) + "' requires nu");
    }
    return *nu;
  };
  if (key == "identityordinary") return kind::IdentityOrdinary{};
  if (key == "identitylr") return kind::IdentityLR{};
  if (key == "tracefreeproj") return kind::TracefreeProj{};
  if (key == "symproj") return kind::SymProj{};
  if (key == "antisymproj") return kind::AntisymProj{};
  if (key == "transpose") return kind::Transpose{};
  if (key == "inverter") return kind::Inverter{nu.value_or(1.0)};
  if (key == "invertertp") return kind::InverterTP{};
  if (key == "universalnot") return kind::UniversalNOT{};
  if (key == "gav") return kind::GAV{};
  if (key == "familytp") return kind::FamilyTP{need_nu()};
  if (key == "family") {
    if (!eta) {
      throw std::invalid_argument("kind 'Family' requires eta");
    }
    return kind::Family{*eta, need_nu()};
  }
  throw std::invalid_argument("unknown superoperator kind '" + std::string(name) + "'");
}

bool is_trace_preserving(const SuperOperator& s, double tol) {
  const int d = s.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return max_abs(apply_ordinary(adjoint_cross(s), id) - id) <= tol;
}

CpResult is_completely_positive(const SuperOperator& s, double tol) {
  const ComplexMatrix& m = s.lr_matrix();
  const double residue = max_abs(m - m.adjoint());
  if (residue > tol) {
    throw DomainError("is_completely_positive: left-right matrix is not Hermitian (residue " +
                      std::to_string(residue) + ")");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  CpResult result;
  result.spectrum.assign(ev.data(), ev.data() + ev.size());
  std::sort(result.spectrum.begin(), result.spectrum.end());
  result.completely_positive = result.spectrum.front() >= -tol;
  return result;
}

bool is_positive_family(double nu, int dim) {
  require_dim(dim);
  constexpr double slack = 1e-12;
  return nu >= -slack && nu <= 1.0 / (dim - 1.0) + slack;
}

bool is_cp_family(double nu, int dim) {
  require_dim(dim);
  constexpr double slack = 1e-12;
  const double d = dim;
  return nu >= -slack && nu <= d / (d * d - 1.0) + slack;
}

bool is_positive_sampled(const SuperOperator& s, int trials, std::uint64_t seed, double tol) {
  Rng rng = make_rng(seed);
  for (int t = 0; t < trials; ++t) {
    const ComplexVector psi = haar_random_vector(s.dim(), rng);
    const ComplexMatrix out = apply_ordinary(s, psi * psi.adjoint());
    if (!is_hermitian(out, tol)) {
      return false;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (out + out.adjoint()),
                                                        Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
      return false;
    }
  }
  return true;
}

bool is_leftright_hermitian(const SuperOperator& s, double tol) {
  return max_abs(s.lr_matrix() - s.lr_matrix().adjoint()) <= tol;
}

bool preserves_hermiticity(const SuperOperator& s, double tol) {
  const int d = s.dim();
  const OperatorBasis basis = outer_product_basis(d);
  std::vector<ComplexMatrix> images;
  images.reserve(basis.elements.size());
  for (const auto& tau : basis.elements) {
    images.push_back(apply_ordinary(s, tau));
  }
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const ComplexMatrix& forward = images[j * d + k];
      const ComplexMatrix& backward = images[k * d + j];
      if (max_abs(forward - backward.adjoint()) > tol) {
        return false;
      }
    }
  }
  return true;
}

bool commutes_with_unitaries(const SuperOperator& s, int trials, std::uint64_t seed, double tol) {
  if (trials < 1) {
    throw DomainError("commutes_with_unitaries: trials must be >= 1");
  }
  Rng rng = make_rng(seed);
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix u = haar_random_unitary(s.dim(), rng);
    const SuperOperator conj = SuperOperator::conjugation(u, u.adjoint());
    if (max_abs_diff(compose_ordinary(s, conj), compose_ordinary(conj, s)) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace qinvert
