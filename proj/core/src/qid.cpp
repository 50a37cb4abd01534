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

#include "qinvert/qid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qinvert/errors.hpp"

namespace qinvert {
namespace {

constexpr int kShardSize = 4096;

void require_dim(int dim) {
  if (dim < 2) {
    throw DomainError("qudit dimension must be >= 2, got " + std::to_string(dim));
  }
}

void require_qid_dim(int dim) {
  require_dim(dim);
  if (dim > kMaxQidDim) {
    throw DomainError("QID simulation supports D <= " + std::to_string(kMaxQidDim) + ", got " +
                      std::to_string(dim));
  }
}

// B diag(phases) B^dagger
ComplexMatrix from_eigenbasis(const ComplexMatrix& basis, const ComplexVector& phases) {
  return basis * (phases.asDiagonal() * basis.adjoint());
}

}  // namespace

ComplexVector QuditFrame::x_state(int k) const { return basis_vector(dim, k); }

ComplexVector QuditFrame::p_state(int l) const {
  if (l < 0 || l >= dim) {
    throw DomainError("p_state: index out of range");
  }
  return dft.col(l);
}

QuditFrame build_frame(int dim) {
  require_dim(dim);
  QuditFrame frame;
  frame.dim = dim;
  frame.dft.resize(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) {
      // reduce k*l mod D so the angle stays small
      const double angle = 2.0 * std::numbers::pi * ((k * l) % dim) / dim;
      frame.dft(k, l) = std::polar(norm, angle);
    }
  }
  const double unit = std::sqrt(2.0 * std::numbers::pi / dim);
  frame.spectrum.resize(dim);
  ComplexVector diag(dim);
  for (int k = 0; k < dim; ++k) {
    frame.spectrum[k] = k * unit;
    diag(k) = frame.spectrum[k];
  }
  frame.x_op = diag.asDiagonal();
  frame.p_op = from_eigenbasis(frame.dft, diag);
  return frame;
}

ComplexMatrix shift_operator(const QuditFrame& frame, Axis axis, int n) {
  const int d = frame.dim;
  if (n < 0 || n > d) {
    throw DomainError("shift_operator: n = " + std::to_string(n) + " outside [0, " +
                      std::to_string(d) + "]");
  }
  const double amount = n * std::sqrt(2.0 * std::numbers::pi / d);
  ComplexVector phases(d);
  if (axis == Axis::X) {
    // exp(-i x_n p): diagonal in the momentum basis
    for (int l = 0; l < d; ++l) phases(l) = std::polar(1.0, -amount * frame.spectrum[l]);
    return from_eigenbasis(frame.dft, phases);
  }
  // exp(i p_n x): diagonal in the position basis
  for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, amount * frame.spectrum[k]);
  return phases.asDiagonal();
}

BipartiteState entangled_basis_state(const QuditFrame& frame, int m, int n) {
  const int d = frame.dim;
  if (m < 0 || m >= d || n < 0 || n >= d) {
    throw DomainError("entangled_basis_state: indices must lie in [0, D)");
  }
  ComplexVector psi = ComplexVector::Zero(d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    const double angle = 2.0 * std::numbers::pi * ((m * k) % d) / d;
    psi(k * d + (k + n) % d) = std::polar(norm, angle);
  }
  return BipartiteState::pure({d, d}, std::move(psi));
}

double QidSetup::normalization_residual() const {
  const double a = xi2.real();
  return std::abs(xi1 * xi1 + std::norm(xi2) + 2.0 * a * xi1 / dim - 1.0);
}

QidSetup make_setup(int dim, Complex xi2) {
  require_dim(dim);
  const double d = dim;
  const double a = xi2.real();
  const double b = xi2.imag();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("xi2 must be finite");
  }
  const double radicand = 1.0 - b * b - a * a * (d * d - 1.0) / (d * d);
  if (radicand < -1e-12) {
    throw DomainError(
        "xi2 lies outside the ellipse a^2 (D^2-1)/D^2 + b^2 <= 1; xi1 would not be real");
  }
  // On the boundary the radicand is a cancellation of O(1) terms; rounding
  // noise of order 1e-16 would otherwise surface as 1e-8 in xi1.
  const double root = radicand <= 1e-13 ? 0.0 : std::sqrt(radicand);
  return QidSetup{dim, xi2, -a / d + root};
}

PreparedAncilla prepare_phi(int dim, Complex xi2) {
  const QidSetup setup = make_setup(dim, xi2);
  const QuditFrame frame = build_frame(dim);
  const ComplexVector xi00 = entangled_basis_state(frame, 0, 0).vector();
  ComplexVector phi = setup.xi1 * xi00 + setup.xi2 * kron(frame.x_state(0), frame.p_state(0));
  return {setup, BipartiteState::pure({dim, dim}, std::move(phi))};
}

Complex optimal_xi2(int dim) {
  require_dim(dim);
  const double d = dim;
  return d / std::sqrt(d * d - 1.0);
}

ComplexMatrix build_uabc(int dim) {
  require_qid_dim(dim);
  const QuditFrame frame = build_frame(dim);
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const std::vector<double>& ev = frame.spectrum;
  const int n = dim * dim * dim;

  // exp[-i (x_C - x_B) p_A] is diagonal in |p>_A |x>_B |x>_C
  ComplexVector first(n);
  // exp[-i x_A (p_B + p_C)] is diagonal in |x>_A |p>_B |p>_C
  ComplexVector second(n);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        const int idx = (a * dim + b) * dim + c;
        first(idx) = std::polar(1.0, -(ev[c] - ev[b]) * ev[a]);
        second(idx) = std::polar(1.0, -ev[a] * (ev[b] + ev[c]));
      }
    }
  }
  const ComplexMatrix basis_first = kron(kron(frame.dft, id), id);
  const ComplexMatrix basis_second = kron(kron(id, frame.dft), frame.dft);
  return from_eigenbasis(basis_first, first) * from_eigenbasis(basis_second, second);
}

const ComplexMatrix& QidOutputs::operator[](Qudit q) const {
  switch (q) {
    case Qudit::A:
      return a;
    case Qudit::B:
      return b;
    case Qudit::C:
      break;
  }
  return c;
}

QidOutputs run_qid_linear(const ComplexMatrix& uabc, const QidSetup& setup,
                          const ComplexMatrix& input) {
  const int d = setup.dim;
  const int n = d * d * d;
  if (uabc.rows() != n || uabc.cols() != n || input.rows() != d || input.cols() != d) {
    throw DimensionError("run_qid_linear: operand sizes do not match D = " + std::to_string(d));
  }
  const PreparedAncilla ancilla = prepare_phi(d, setup.xi2);
  const ComplexVector& phi = ancilla.phi.vector();
  const ComplexMatrix joint = kron(input, ComplexMatrix(phi * phi.adjoint()));
  const ComplexMatrix out = uabc * joint * uabc.adjoint();

  QidOutputs result;
  result.a = partial_trace(out, {d, d * d}, Subsystem::A);
  result.c = partial_trace(out, {d * d, d}, Subsystem::B);
  result.b = partial_trace(partial_trace(out, {d, d * d}, Subsystem::B), {d, d}, Subsystem::A);
  return result;
}

QidOutputs run_qid(int dim, Complex xi2, const ComplexMatrix& rho_in) {
  require_qid_dim(dim);
  if (rho_in.rows() != dim || rho_in.cols() != dim) {
    throw DimensionError("run_qid: input state must be " + std::to_string(dim) + "x" +
                         std::to_string(dim));
  }
  if (!is_density(rho_in)) {
    throw InvalidStateError("run_qid: input is not a density operator");
  }
  const QidSetup setup = make_setup(dim, xi2);
  return run_qid_linear(build_uabc(dim), setup, rho_in);
}

QidOutputs qid_closed_form(const QidSetup& setup, const ComplexMatrix& rho) {
  const double d = setup.dim;
  const ComplexMatrix id = ComplexMatrix::Identity(setup.dim, setup.dim);
  const double xi2_sq = std::norm(setup.xi2);
  const double xi1_sq = setup.xi1 * setup.xi1;
  QidOutputs out;
  out.a = (1.0 - xi2_sq) * rho + (xi2_sq / d) * id;
  out.b = (1.0 - xi1_sq) * rho + (xi1_sq / d) * id;
  out.c = (setup.xi1 * 2.0 * setup.xi2.real() / d) * rho.transpose() +
          ((xi1_sq + xi2_sq) / d) * id;
  return out;
}

SuperOperator qid_channel(int dim, Complex xi2, Qudit which) {
  require_qid_dim(dim);
  const QidSetup setup = make_setup(dim, xi2);
  const ComplexMatrix u = build_uabc(dim);
  return SuperOperator::from_ordinary_action(
      dim, [&](const ComplexMatrix& tau) { return run_qid_linear(u, setup, tau)[which]; });
}

ComplexMatrix universal_not_apply(const ComplexMatrix& rho) {
  if (!is_density(rho)) {
    throw InvalidStateError("universal_not_apply: input is not a density operator");
  }
  const auto d = rho.rows();
  require_dim(static_cast<int>(d));
  const double dd = static_cast<double>(d);
  return (dd * ComplexMatrix::Identity(d, d) - rho) / (dd * dd - 1.0);
}

SuperOperator gav_from_states(int dim, std::span<const ComplexVector> states) {
  require_dim(dim);
  if (states.empty()) {
    throw DomainError("gav_from_states: need at least one state");
  }
  const int n = dim * dim;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& psi : states) {
    if (psi.size() != dim) {
      throw DimensionError("gav_from_states: state has wrong dimension");
    }
    const ComplexMatrix proj = psi * psi.adjoint();
    sum += SuperOperator::conjugation(proj, proj).lr_matrix();
  }
  return SuperOperator(dim, (static_cast<double>(dim) / states.size()) * sum);
}

SuperOperator gav_monte_carlo(int dim, int samples, std::uint64_t seed) {
  require_dim(dim);
  if (samples < 1) {
    throw DomainError("gav_monte_carlo: samples must be >= 1");
  }
  const int n = dim * dim;
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  const int shards = (samples + kShardSize - 1) / kShardSize;
  for (int s = 0; s < shards; ++s) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
    const int count = std::min(kShardSize, samples - s * kShardSize);
    ComplexMatrix shard = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < count; ++i) {
      const ComplexVector psi = haar_random_vector(dim, rng);
      // vec(P) vec(P)^dagger is the left-right matrix of P (.) P
      ComplexVector v(n);
      for (int l = 0; l < dim; ++l) {
        for (int j = 0; j < dim; ++j) {
          v(l * dim + j) = psi(l) * std::conj(psi(j));
        }
      }
      shard.noalias() += v * v.adjoint();
    }
    sum += shard;
  }
  return SuperOperator(dim, (static_cast<double>(dim) / samples) * sum);
}

SuperOperator povm_inversion_channel(int dim) {
  return compose_ordinary(special(kind::InverterTP{}, dim), special(kind::GAV{}, dim));
}

}  // namespace qinvert
