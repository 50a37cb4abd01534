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

#include "qinvert/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qinvert/errors.hpp"
#include "qinvert/superoperator.hpp"

namespace qinvert {
namespace {

constexpr double kSchmidtCutoff = 1e-12;

void require_pure(const BipartiteState& s, const char* what) {
  if (!s.is_pure()) {
    throw InvalidStateError(std::string(what) + ": requires a pure state");
  }
}

ComplexMatrix coefficient_matrix(const ComplexVector& psi, Dims dims) {
  ComplexMatrix c(dims.first, dims.second);
  for (int i = 0; i < dims.first; ++i) {
    for (int j = 0; j < dims.second; ++j) {
      c(i, j) = psi(i * dims.second + j);
    }
  }
  return c;
}

// p * C(v / sqrt(p)) for an unnormalized v with p = |v|^2, at nu1 = nu2 = 1.
double weighted_concurrence(const Complex* v, Dims dims) {
  const int d1 = dims.first;
  const int d2 = dims.second;
  double p = 0.0;
  for (int i = 0; i < d1 * d2; ++i) p += std::norm(v[i]);
  double marginal_purity = 0.0;
  for (int i = 0; i < d1; ++i) {
    for (int k = i; k < d1; ++k) {
      Complex acc = 0.0;
      for (int j = 0; j < d2; ++j) acc += v[i * d2 + j] * std::conj(v[k * d2 + j]);
      marginal_purity += (i == k ? 1.0 : 2.0) * std::norm(acc);
    }
  }
  return std::sqrt(std::max(0.0, 2.0 * (p * p - marginal_purity)));
}

bool lexicographically_before(const ComplexVector& a, const ComplexVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() > b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() > b(i).imag();
  }
  return false;
}

struct Descent {
  Dims dims;
  ComplexMatrix members;  // columns are unnormalized ensemble vectors
  std::vector<double> cost;
  ComplexVector scratch_i;
  ComplexVector scratch_j;

  double total() const {
    double t = 0.0;
    for (double c : cost) t += c;
    return t;
  }

  void refresh() {
    cost.resize(members.cols());
    for (Eigen::Index k = 0; k < members.cols(); ++k) {
      cost[k] = weighted_concurrence(members.col(k).data(), dims);
    }
  }

  // Applies the rotation of columns (i, j) by (theta, phi) if it lowers the cost.
  bool try_rotation(int i, int j, double theta, double phi) {
    const double c = std::cos(theta);
    const Complex es = std::polar(std::sin(theta), phi);
    const auto n = members.rows();
    scratch_i.resize(n);
    scratch_j.resize(n);
    const Complex* vi = members.col(i).data();
    const Complex* vj = members.col(j).data();
    for (Eigen::Index t = 0; t < n; ++t) {
      scratch_i(t) = c * vi[t] - es * vj[t];
      scratch_j(t) = std::conj(es) * vi[t] + c * vj[t];
    }
    const double ci = weighted_concurrence(scratch_i.data(), dims);
    const double cj = weighted_concurrence(scratch_j.data(), dims);
    if (ci + cj < cost[i] + cost[j] - 1e-15) {
      members.col(i) = scratch_i;
      members.col(j) = scratch_j;
      cost[i] = ci;
      cost[j] = cj;
      return true;
    }
    return false;
  }

  void run(double initial_step, double final_step, int max_sweeps) {
    const int m = static_cast<int>(members.cols());
    if (m < 2) return;
    constexpr int kPhases = 8;
    double step = initial_step;
    double before = total();
    for (int sweep = 0; sweep < max_sweeps && step >= final_step; ++sweep) {
      bool improved = false;
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          if (cost[i] == 0.0 && cost[j] == 0.0) continue;
          for (int p = 0; p < kPhases; ++p) {
            const double phi = 2.0 * std::numbers::pi * p / kPhases;
            if (try_rotation(i, j, step, phi)) {
              improved = true;
              // keep moving while the same direction helps
              while (try_rotation(i, j, step, phi)) {
              }
              break;
            }
          }
        }
      }
      const double after = total();
      if (!improved || before - after < 1e-12) step *= 0.5;
      before = after;
    }
  }
};

}  // namespace

BipartiteState BipartiteState::pure(Dims dims, ComplexVector psi, double tol) {
  if (dims.first < 1 || dims.second < 1 || psi.size() != dims.total()) {
    throw DimensionError("pure state: vector length " + std::to_string(psi.size()) +
                         " does not match dims (" + std::to_string(dims.first) + ", " +
                         std::to_string(dims.second) + ")");
  }
  const double norm = psi.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol) {
    throw InvalidStateError("pure state is not normalized (norm " + std::to_string(norm) + ")");
  }
  return BipartiteState(dims, StateKind::Pure, std::move(psi), {});
}

BipartiteState BipartiteState::density(Dims dims, ComplexMatrix rho, double tol) {
  if (dims.first < 1 || dims.second < 1 || rho.rows() != dims.total() ||
      rho.cols() != dims.total()) {
    throw DimensionError("density state: matrix size does not match dims (" +
                         std::to_string(dims.first) + ", " + std::to_string(dims.second) + ")");
  }
  if (!is_density(rho, tol)) {
    throw InvalidStateError("matrix is not a valid density operator");
  }
  return BipartiteState(dims, StateKind::Density, {}, std::move(rho));
}

const ComplexVector& BipartiteState::vector() const {
  require_pure(*this, "BipartiteState::vector");
  return psi_;
}

ComplexMatrix BipartiteState::density_matrix() const {
  return is_pure() ? ComplexMatrix(psi_ * psi_.adjoint()) : rho_;
}

ComplexMatrix BipartiteState::marginal(Subsystem keep) const {
  return partial_trace(density_matrix(), dims_, keep);
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  if (coefficients.empty()) {
    return {};
  }
  ComplexVector out = ComplexVector::Zero(left_basis.front().size() * right_basis.front().size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    out += coefficients[k] * kron(left_basis[k], right_basis[k]);
  }
  return out;
}

SchmidtDecomposition schmidt_decompose(const BipartiteState& psi) {
  require_pure(psi, "schmidt_decompose");
  const ComplexMatrix c = coefficient_matrix(psi.vector(), psi.dims());
  Eigen::JacobiSVD<ComplexMatrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();

  struct Term {
    double a;
    ComplexVector left;
    ComplexVector right;
  };
  std::vector<Term> terms;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) < kSchmidtCutoff) continue;
    // C = U S V^dagger, so Psi = sum_k s_k u_k (x) conj(v_k).
    ComplexVector left = svd.matrixU().col(k);
    ComplexVector right = svd.matrixV().col(k).conjugate();
    for (Eigen::Index i = 0; i < left.size(); ++i) {
      if (std::abs(left(i)) > kSchmidtCutoff) {
        const Complex phase = left(i) / std::abs(left(i));
        left /= phase;
        right *= phase;
        break;
      }
    }
    terms.push_back({s(k), std::move(left), std::move(right)});
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (std::abs(x.a - y.a) > kSchmidtCutoff) return x.a > y.a;
    return lexicographically_before(x.left, y.left);
  });

  SchmidtDecomposition out;
  for (auto& t : terms) {
    out.coefficients.push_back(t.a);
    out.left_basis.push_back(std::move(t.left));
    out.right_basis.push_back(std::move(t.right));
  }
  return out;
}

double purity(const ComplexMatrix& rho) {
  if (!is_density(rho)) {
    throw InvalidStateError("purity: argument is not a density operator");
  }
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.squaredNorm();
}

double iconcurrence_pure(const BipartiteState& psi, double nu1, double nu2) {
  require_pure(psi, "iconcurrence_pure");
  const ComplexMatrix rho_a = psi.marginal(Subsystem::A);
  // (tr rho_A)^2 - tr rho_A^2 as twice the sum of 2x2 principal minors
  double minors = 0.0;
  for (Eigen::Index j = 0; j < rho_a.rows(); ++j) {
    for (Eigen::Index k = j + 1; k < rho_a.rows(); ++k) {
      minors += rho_a(j, j).real() * rho_a(k, k).real() - std::norm(rho_a(j, k));
    }
  }
  return std::sqrt(std::max(0.0, 4.0 * nu1 * nu2 * minors));
}

double iconcurrence_schmidt(const SchmidtDecomposition& schmidt, double nu1, double nu2) {
  double sum = 0.0;
  const auto& a = schmidt.coefficients;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = j + 1; k < a.size(); ++k) {
      sum += a[j] * a[j] * a[k] * a[k];
    }
  }
  return std::sqrt(std::max(0.0, 4.0 * nu1 * nu2 * sum));
}

double iconcurrence_via_inverter(const BipartiteState& psi) {
  require_pure(psi, "iconcurrence_via_inverter");
  const Dims dims = psi.dims();
  if (dims.first < 2 || dims.second < 2) {
    // A one-dimensional factor carries no entanglement.
    return 0.0;
  }
  const SuperOperator joint = tensor_superop(special(kind::Inverter{1.0}, dims.first),
                                             special(kind::Inverter{1.0}, dims.second));
  const ComplexVector& v = psi.vector();
  const ComplexMatrix image = apply_ordinary(joint, v * v.adjoint());
  const double value = v.dot(image * v).real();
  return std::sqrt(std::max(0.0, value));
}

ComplexMatrix spin_flip_tilde(const BipartiteState& rho) {
  if (!(rho.dims() == Dims{2, 2})) {
    throw DimensionError("spin_flip_tilde: requires dims (2, 2)");
  }
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  return yy * rho.density_matrix().conjugate() * yy;
}

double qubit_concurrence_spinflip(const BipartiteState& psi) {
  if (!(psi.dims() == Dims{2, 2})) {
    throw DimensionError("qubit_concurrence_spinflip: requires dims (2, 2)");
  }
  require_pure(psi, "qubit_concurrence_spinflip");
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const ComplexVector& v = psi.vector();
  return std::abs(v.dot(yy * v.conjugate()));
}

double mixed_inverter_quantity(const BipartiteState& rho) {
  const ComplexMatrix joint = rho.density_matrix();
  const ComplexMatrix a = partial_trace(joint, rho.dims(), Subsystem::A);
  const ComplexMatrix b = partial_trace(joint, rho.dims(), Subsystem::B);
  return 1.0 - a.squaredNorm() - b.squaredNorm() + joint.squaredNorm();
}

ComplexMatrix ensemble_density(const std::vector<EnsembleMember>& ensemble) {
  if (ensemble.empty()) {
    return {};
  }
  const auto n = ensemble.front().state.size();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (const auto& member : ensemble) {
    rho += member.probability * member.state * member.state.adjoint();
  }
  return rho;
}

MixedConcurrenceResult mixed_iconcurrence_min(const BipartiteState& rho, int restarts,
                                              std::uint64_t seed) {
  if (restarts < 1) {
    throw DomainError("mixed_iconcurrence_min: restarts must be >= 1");
  }
  const Dims dims = rho.dims();
  const ComplexMatrix joint = rho.density_matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (joint + joint.adjoint()));

  std::vector<ComplexVector> weighted;
  for (Eigen::Index k = eig.eigenvalues().size() - 1; k >= 0; --k) {
    const double lambda = eig.eigenvalues()(k);
    if (lambda > 1e-13) {
      weighted.push_back(std::sqrt(lambda) * eig.eigenvectors().col(k));
    }
  }
  const int rank = static_cast<int>(weighted.size());
  const int members = rank * rank;
  const int n = dims.total();

  ComplexMatrix eigen_ensemble = ComplexMatrix::Zero(n, members);
  for (int k = 0; k < rank; ++k) {
    eigen_ensemble.col(k) = weighted[k];
  }

  MixedConcurrenceResult best;
  best.restarts = restarts;
  double best_value = std::numeric_limits<double>::infinity();
  ComplexMatrix best_members;

  for (int r = 0; r < restarts; ++r) {
    Descent descent{dims, eigen_ensemble, {}, {}, {}};
    if (r > 0 && members > 1) {
      Rng rng = make_rng(seed, static_cast<std::uint64_t>(r));
      descent.members = eigen_ensemble * haar_random_unitary(members, rng);
    }
    descent.refresh();
    descent.run(0.5, 1e-9, 4000);
    descent.refresh();
    const double value = descent.total();
    if (value < best_value) {
      best_value = value;
      best.best_restart = r;
      best_members = descent.members;
    }
  }

  for (Eigen::Index k = 0; k < best_members.cols(); ++k) {
    const double p = best_members.col(k).squaredNorm();
    if (p > 1e-15) {
      best.decomposition.push_back({p, best_members.col(k) / std::sqrt(p)});
    }
  }
  best.value = best_value;
  return best;
}

}  // namespace qinvert
