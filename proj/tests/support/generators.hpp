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

// Hand-rolled generators for property tests. Every generator draws from an
// explicit Rng so failures reproduce from the printed seed.

#include <cstdint>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "qinvert/entanglement.hpp"
#include "qinvert/operator_space.hpp"
#include "qinvert/random.hpp"
#include "qinvert/superoperator.hpp"

namespace qinvert::testing {

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

inline ComplexMatrix gaussian_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = gaussian_complex(rng);
  }
  return m;
}

inline ComplexMatrix random_hermitian(int dim, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

inline SuperOperator random_superop(int dim, Rng& rng) {
  return SuperOperator(dim, gaussian_matrix(dim * dim, dim * dim, rng));
}

inline SuperOperator random_lr_hermitian_superop(int dim, Rng& rng) {
  return SuperOperator(dim, random_hermitian(dim * dim, rng));
}

/// sum_alpha mu_alpha tau_alpha (.) tau_alpha^dagger with mu_alpha >= 0 in a
/// random orthonormal operator basis: completely positive by construction.
inline SuperOperator random_cp_superop(int dim, Rng& rng) {
  const ComplexMatrix w = haar_random_unitary(dim * dim, rng);
  SuperOperator s = SuperOperator::zero(dim);
  for (int alpha = 0; alpha < dim * dim; ++alpha) {
    ComplexMatrix tau(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) tau(r, c) = w(r * dim + c, alpha);
    }
    s += uniform(rng, 0.0, 1.0) * SuperOperator::conjugation(tau, tau.adjoint());
  }
  return s;
}

inline BipartiteState random_pure_state(Dims dims, Rng& rng) {
  return BipartiteState::pure(dims, random_pure(dims.total(), rng));
}

inline BipartiteState random_density_state(Dims dims, Rng& rng, int rank = 0) {
  return BipartiteState::density(dims, random_density(dims.total(), rng, rank));
}

inline BipartiteState product_pure_state(Dims dims, Rng& rng) {
  return BipartiteState::pure(dims, kron(random_pure(dims.first, rng), random_pure(dims.second, rng)));
}

inline ComplexVector maximally_entangled(int dim) {
  ComplexVector v = ComplexVector::Zero(dim * dim);
  for (int k = 0; k < dim; ++k) v(k * dim + k) = 1.0 / std::sqrt(static_cast<double>(dim));
  return v;
}

inline ComplexVector bell_vector() { return maximally_entangled(2); }

/// Runs `body` for `cases` independent draws, reporting the failing case.
inline void for_all(int cases, std::uint64_t seed, const std::function<void(Rng&)>& body) {
  for (int i = 0; i < cases; ++i) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
    SCOPED_TRACE("property case " + std::to_string(i) + " seed " + std::to_string(seed));
    body(rng);
    if (::testing::Test::HasFatalFailure()) return;
  }
}

}  // namespace qinvert::testing
