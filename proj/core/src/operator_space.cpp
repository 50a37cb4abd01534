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

#include "qinvert/operator_space.hpp"

#include <cmath>
#include <string>

#include "qinvert/errors.hpp"

namespace qinvert {
namespace {

void require_dim(int dim) {
  if (dim < 2) {
    throw DomainError("dimension must be >= 2, got " + std::to_string(dim));
  }
}

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("shape mismatch in comparison");
  }
  return max_abs(a - b);
}

bool is_square(const ComplexMatrix& m) { return m.rows() == m.cols(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return is_square(m) && max_abs(m - m.adjoint()) <= tol;
}

bool is_density(const ComplexMatrix& rho, double tol) {
  if (!is_hermitian(rho, tol) || rho.rows() == 0) {
    return false;
  }
  if (std::abs(rho.trace() - Complex(1.0)) > tol) {
    return false;
  }
  const ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!is_square(u)) {
    return false;
  }
  const auto n = u.rows();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(n, n)) <= tol;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: operands have different dimensions");
  }
  // tr(A^dagger B) = sum_ij conj(A_ij) B_ij
  return (a.conjugate().cwiseProduct(b)).sum();
}

double OperatorBasis::orthonormality_residual() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = 0; b < elements.size(); ++b) {
      const Complex expected = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(hs_inner(elements[a], elements[b]) - expected));
    }
  }
  return worst;
}

OperatorBasis outer_product_basis(int dim) {
  require_dim(dim);
  OperatorBasis basis{dim, {}};
  basis.elements.reserve(static_cast<std::size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      ComplexMatrix tau = ComplexMatrix::Zero(dim, dim);
      tau(j, k) = 1.0;
      basis.elements.push_back(std::move(tau));
    }
  }
  return basis;
}

std::vector<ComplexMatrix> su_generators(int dim) {
  require_dim(dim);
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(dim) * dim - 1);

  // Diagonal: index j counts from 2 to D in one-based terms.
  for (int j = 2; j <= dim; ++j) {
    ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
    for (int k = 0; k < j - 1; ++k) {
      g(k, k) = 1.0;
    }
    g(j - 1, j - 1) = -static_cast<double>(j - 1);
    out.push_back(g / std::sqrt(static_cast<double>(j * (j - 1))));
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
      g(j, k) = inv_sqrt2;
      g(k, j) = inv_sqrt2;
      out.push_back(std::move(g));
    }
  }
  const Complex minus_i_over_sqrt2(0.0, -inv_sqrt2);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
      g(j, k) = minus_i_over_sqrt2;
      g(k, j) = -minus_i_over_sqrt2;
      out.push_back(std::move(g));
    }
  }
  return out;
}

OperatorBasis generator_basis(int dim) {
  OperatorBasis basis{dim, su_generators(dim)};
  basis.elements.push_back(ComplexMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
  return basis;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexVector haar_random_vector(int dim, Rng& rng) {
  require_dim(dim);
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = gaussian(rng);
  }
  return v / v.norm();
}

ComplexMatrix haar_random_state(int dim, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  const ComplexVector psi = haar_random_vector(dim, rng);
  return psi * psi.adjoint();
}

ComplexMatrix haar_random_unitary(int dim, Rng& rng) {
  require_dim(dim);
  ComplexMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      z(i, j) = gaussian(rng);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

ComplexMatrix random_density(int dim, Rng& rng, int rank) {
  if (dim < 1) {
    throw DomainError("random_density: dimension must be positive");
  }
  const int r = rank <= 0 ? dim : rank;
  ComplexMatrix g(dim, r);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < r; ++j) {
      g(i, j) = gaussian(rng);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

ComplexVector random_pure(int dim, Rng& rng) {
  if (dim < 1) {
    throw DomainError("random_pure: dimension must be positive");
  }
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) {
    v(i) = gaussian(rng);
  }
  return v / v.norm();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Subsystem keep) {
  if (dims.first < 1 || dims.second < 1 || !is_square(rho) ||
      rho.rows() != dims.total()) {
    throw DimensionError("partial_trace: dims (" + std::to_string(dims.first) + ", " +
                         std::to_string(dims.second) + ") do not factor a " +
                         std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                         " matrix");
  }
  const int d1 = dims.first;
  const int d2 = dims.second;
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i) {
      for (int k = 0; k < d1; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < d2; ++j) {
          acc += rho(i * d2 + j, k * d2 + j);
        }
        out(i, k) = acc;
      }
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int j = 0; j < d2; ++j) {
    for (int l = 0; l < d2; ++l) {
      Complex acc = 0.0;
      for (int i = 0; i < d1; ++i) {
        acc += rho(i * d2 + j, i * d2 + l);
      }
      out(j, l) = acc;
    }
  }
  return out;
}

ComplexVector basis_vector(int dim, int k) {
  if (k < 0 || k >= dim) {
    throw DomainError("basis_vector: index " + std::to_string(k) + " out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace qinvert
