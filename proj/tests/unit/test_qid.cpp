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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "qinvert/errors.hpp"
#include "qinvert/qid.hpp"
#include "support/generators.hpp"

namespace qinvert {
namespace {

using testing::for_all;
constexpr double kPi = std::numbers::pi;

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

// |psi>_B (x) |Xi_00>_AC in the a*D^2 + b*D + c ordering.
ComplexVector psi_on_b_xi_on_ac(const ComplexVector& psi, const ComplexVector& xi00, int d) {
  ComplexVector out = ComplexVector::Zero(d * d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) out(a * d * d + b * d + c) = psi(b) * xi00(a * d + c);
  return out;
}

// U_ABC from general matrix exponentials of the frame operators.
ComplexMatrix uabc_by_expm(int d) {
  const QuditFrame f = build_frame(d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix x_a = kron(kron(f.x_op, id), id);
  const ComplexMatrix x_b = kron(kron(id, f.x_op), id);
  const ComplexMatrix x_c = kron(kron(id, id), f.x_op);
  const ComplexMatrix p_a = kron(kron(f.p_op, id), id);
  const ComplexMatrix p_b = kron(kron(id, f.p_op), id);
  const ComplexMatrix p_c = kron(kron(id, id), f.p_op);
  const Complex i(0, 1);
  const ComplexMatrix first = (-i * (x_c - x_b) * p_a).eval().exp();
  const ComplexMatrix second = (-i * x_a * (p_b + p_c)).eval().exp();
  return first * second;
}

std::vector<Complex> valid_xi2_grid(int d) {
  const double amax = d / std::sqrt(d * d - 1.0);
  return {Complex(0, 0), Complex(0.5 * amax, 0), Complex(-0.3, 0.4), Complex(0.3, 0.4),
          Complex(0, -0.9), Complex(-amax, 0), optimal_xi2(d)};
}

TEST(Frame, DimensionTwoMomentumZero) {
  const QuditFrame f = build_frame(2);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LE((f.p_state(0) - ComplexVector::Constant(2, r)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Frame, StructureForAllDimensions) {
  for (int d = 2; d <= 8; ++d) {
    const QuditFrame f = build_frame(d);
    EXPECT_TRUE(is_unitary(f.dft, 1e-12));
    for (int k = 0; k < d; ++k) {
      EXPECT_EQ(f.spectrum[k], k * std::sqrt(2 * kPi / d));
      EXPECT_LE((f.x_op * f.x_state(k) - f.spectrum[k] * f.x_state(k)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((f.p_op * f.p_state(k) - f.spectrum[k] * f.p_state(k)).cwiseAbs().maxCoeff(), 1e-12);
      for (int l = 0; l < d; ++l) {
        const Complex expected = std::polar(1 / std::sqrt(double(d)), 2 * kPi * k * l / d);
        EXPECT_LE(std::abs(f.x_state(k).dot(f.p_state(l)) - expected), 1e-12);
      }
    }
    EXPECT_LE(max_abs_diff(f.p_op, f.dft * f.x_op * f.dft.adjoint()), 1e-12);
  }
}

TEST(Frame, RejectsSmallDimension) { EXPECT_THROW(build_frame(1), DomainError); }

TEST(ShiftOperator, CyclicallyPermutesBothBases) {
  for (int d = 2; d <= 6; ++d) {
    const QuditFrame f = build_frame(d);
    for (int n = 0; n < d; ++n) {
      const ComplexMatrix rx = shift_operator(f, Axis::X, n);
      const ComplexMatrix rp = shift_operator(f, Axis::P, n);
      for (int k = 0; k < d; ++k) {
        EXPECT_LE((rx * f.x_state(k) - f.x_state((k + n) % d)).cwiseAbs().maxCoeff(), 1e-11);
        EXPECT_LE((rp * f.p_state(k) - f.p_state((k + n) % d)).cwiseAbs().maxCoeff(), 1e-11);
      }
    }
  }
}

TEST(ShiftOperator, Examples) {
  const QuditFrame f = build_frame(3);
  EXPECT_LE((shift_operator(f, Axis::X, 1) * f.x_state(0) - f.x_state(1)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE(max_abs_diff(shift_operator(f, Axis::X, 3), ComplexMatrix::Identity(3, 3)), 1e-12);
  EXPECT_THROW(shift_operator(f, Axis::X, 4), DomainError);
  EXPECT_THROW(shift_operator(f, Axis::P, -1), DomainError);
}

TEST(ShiftOperator, WeylCommutationPhase) {
  for (int d = 2; d <= 5; ++d) {
    const QuditFrame f = build_frame(d);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        const ComplexMatrix rp = shift_operator(f, Axis::P, m);
        const ComplexMatrix rx = shift_operator(f, Axis::X, n);
        const ComplexMatrix lhs = rp * rx;
        const ComplexMatrix rhs = rx * rp;
        const Complex phase = (rhs.adjoint() * lhs).trace() / double(d);
        EXPECT_LE(max_abs_diff(lhs, phase * rhs), 1e-11);
        const Complex plus = std::polar(1.0, 2 * kPi * m * n / d);
        EXPECT_LE(std::min(std::abs(phase - plus), std::abs(phase - std::conj(plus))), 1e-11);
      }
    }
  }
}

TEST(EntangledBasis, QubitXi00IsBell) {
  const QuditFrame f = build_frame(2);
  EXPECT_LE((entangled_basis_state(f, 0, 0).vector() - testing::bell_vector()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EntangledBasis, OrthonormalMaximallyEntangledAndGeneratedLocally) {
  for (int d = 2; d <= 4; ++d) {
    const QuditFrame f = build_frame(d);
    const ComplexVector xi00 = entangled_basis_state(f, 0, 0).vector();
    std::vector<ComplexVector> all;
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        const BipartiteState xi = entangled_basis_state(f, m, n);
        all.push_back(xi.vector());
        EXPECT_LE(max_abs_diff(xi.marginal(Subsystem::A), ComplexMatrix::Identity(d, d) / double(d)), 1e-12);
        const ComplexVector local =
            kron(shift_operator(f, Axis::P, m), shift_operator(f, Axis::X, n)) * xi00;
        EXPECT_LE((local - xi.vector()).cwiseAbs().maxCoeff(), 1e-12);
        ComplexVector momentum = ComplexVector::Zero(d * d);
        for (int l = 0; l < d; ++l) {
          momentum += std::polar(1 / std::sqrt(double(d)), -2 * kPi * n * l / d) *
                      kron(f.p_state(((m - l) % d + d) % d), f.p_state(l));
        }
        EXPECT_LE((momentum - xi.vector()).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t k = 0; k < all.size(); ++k)
        EXPECT_LE(std::abs(all[i].dot(all[k]) - (i == k ? 1.0 : 0.0)), 1e-12);
  }
  EXPECT_THROW(entangled_basis_state(build_frame(3), 3, 0), DomainError);
}

TEST(PreparePhi, ParameterExamples) {
  const PreparedAncilla opt = prepare_phi(2, 2 / std::sqrt(3.0));
  EXPECT_NEAR(opt.setup.xi1, -1 / std::sqrt(3.0), 1e-12);
  for (int d = 2; d <= 6; ++d) {
    const PreparedAncilla zero = prepare_phi(d, 0.0);
    EXPECT_NEAR(zero.setup.xi1, 1.0, 1e-15);
    EXPECT_LE((zero.phi.vector() - entangled_basis_state(build_frame(d), 0, 0).vector()).cwiseAbs().maxCoeff(),
              1e-15);
  }
  const PreparedAncilla top = prepare_phi(3, -1 / std::sqrt(8.0));
  EXPECT_NEAR(top.setup.xi1, 3 / std::sqrt(8.0), 1e-12);
}

TEST(PreparePhi, InvariantsOverTheEllipse) {
  for (int d = 2; d <= 6; ++d) {
    const double dd = d;
    const double amax = dd / std::sqrt(dd * dd - 1);
    for (int i = 0; i <= 8; ++i) {
      for (int j = 0; j <= 8; ++j) {
        const double a = amax * (i / 4.0 - 1.0);
        const double bmax = std::sqrt(std::max(0.0, 1 - a * a * (dd * dd - 1) / (dd * dd)));
        const double b = bmax * (j / 4.0 - 1.0);
        const PreparedAncilla p = prepare_phi(d, Complex(a, b));
        EXPECT_LE(p.setup.normalization_residual(), 1e-12);
        EXPECT_NEAR(p.phi.vector().norm(), 1.0, 1e-12);
        EXPECT_GE(p.setup.xi1, -1 / std::sqrt(dd * dd - 1) - 1e-12);
        EXPECT_LE(p.setup.xi1, dd / std::sqrt(dd * dd - 1) + 1e-12);
        EXPECT_LE(std::norm(p.setup.xi2), dd * dd / (dd * dd - 1) + 1e-12);
      }
    }
  }
}

TEST(PreparePhi, RejectsPointsOutsideTheEllipse) {
  EXPECT_THROW(make_setup(3, Complex(0, 1.01)), DomainError);
  EXPECT_THROW(make_setup(3, Complex(1.1, 0)), DomainError);
  EXPECT_THROW(make_setup(2, Complex(std::nan(""), 0)), DomainError);
}

TEST(Uabc, UnitaryAndMatchesMatrixExponential) {
  for (int d = 2; d <= 4; ++d) {
    const ComplexMatrix u = build_uabc(d);
    EXPECT_TRUE(is_unitary(u, 1e-11));
    if (d <= 3) EXPECT_LE(max_abs_diff(u, uabc_by_expm(d)), 1e-10);
  }
  EXPECT_THROW(build_uabc(kMaxQidDim + 1), DomainError);
}

TEST(Uabc, JointOutputStateFormula) {
  for (int d = 2; d <= 4; ++d) {
    const ComplexMatrix u = build_uabc(d);
    const QuditFrame f = build_frame(d);
    const ComplexVector xi00 = entangled_basis_state(f, 0, 0).vector();
    for_all(3, 60 + d, [&](Rng& rng) {
      const ComplexVector psi = random_pure(d, rng);
      // |Xi_00>_BC is left invariant
      const ComplexVector kept = kron(psi, xi00);
      EXPECT_LE((u * kept - kept).cwiseAbs().maxCoeff(), 1e-11);
      // |x_0>_B |p_0>_C swaps the input onto B
      const ComplexVector swapped = u * kron(psi, kron(f.x_state(0), f.p_state(0)));
      EXPECT_LE((swapped - psi_on_b_xi_on_ac(psi, xi00, d)).cwiseAbs().maxCoeff(), 1e-11);
      for (const Complex xi2 : valid_xi2_grid(d)) {
        const PreparedAncilla anc = prepare_phi(d, xi2);
        const ComplexVector out = u * kron(psi, anc.phi.vector());
        const ComplexVector expected =
            anc.setup.xi1 * kron(psi, xi00) + xi2 * psi_on_b_xi_on_ac(psi, xi00, d);
        EXPECT_LE((out - expected).cwiseAbs().maxCoeff(), 1e-11);
      }
    });
  }
}

TEST(RunQid, OptimalQubitExamples) {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const QidOutputs out = run_qid(2, optimal_xi2(2), zero);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected.diagonal() << 1.0 / 3.0, 2.0 / 3.0;
  EXPECT_LE(max_abs_diff(out.a, expected), 1e-12);
  expected.diagonal() << 5.0 / 6.0, 1.0 / 6.0;
  EXPECT_LE(max_abs_diff(out.b, expected), 1e-12);
}

TEST(RunQid, ZeroXi2IsIdentityOnA) {
  for_all(5, 70, [](Rng& rng) {
    const int d = testing::uniform_int(rng, 2, 4);
    const ComplexMatrix rho = random_density(d, rng);
    EXPECT_LE(max_abs_diff(run_qid(d, 0.0, rho).a, rho), 1e-12);
  });
}

TEST(RunQid, MarginalsMatchClosedFormsOverGrid) {
  for (int d = 2; d <= 3; ++d) {
    for_all(3, 71 + d, [d](Rng& rng) {
      const ComplexMatrix rho = random_density(d, rng);
      for (const Complex xi2 : valid_xi2_grid(d)) {
        const QidSetup setup = make_setup(d, xi2);
        const QidOutputs sim = run_qid(d, xi2, rho);
        const QidOutputs closed = qid_closed_form(setup, rho);
        for (Qudit q : {Qudit::A, Qudit::B, Qudit::C}) {
          EXPECT_LE(max_abs_diff(sim[q], closed[q]), 1e-10);
          EXPECT_NEAR(sim[q].trace().real(), 1.0, 1e-10);
        }
        // closed form for C written out against rho^T
        const double dd = d;
        const ComplexMatrix c = setup.xi1 * 2 * xi2.real() / dd * rho.transpose() +
                                (setup.xi1 * setup.xi1 + std::norm(xi2)) / dd * ComplexMatrix::Identity(d, d);
        EXPECT_LE(max_abs_diff(sim.c, c), 1e-10);
      }
    });
  }
}

TEST(RunQid, LargeDimensionBOutputApproachesInput) {
  const int d = 8;
  Rng rng = make_rng(72);
  const ComplexMatrix rho = projector(random_pure(d, rng));
  const QidOutputs out = run_qid(d, optimal_xi2(d), rho);
  const double bound = 1.0 / (d * d - 1) * (1.0 + 1.0 / d) + 1e-10;
  EXPECT_LE(max_abs_diff(out.b, rho), bound);
}

TEST(RunQid, RejectsInvalidInputs) {
  EXPECT_THROW(run_qid(2, 0.0, ComplexMatrix::Identity(2, 2)), InvalidStateError);
  EXPECT_THROW(run_qid(2, 0.0, ComplexMatrix::Identity(3, 3) / 3.0), DimensionError);
  EXPECT_THROW(run_qid(2, Complex(2.0, 0), ComplexMatrix::Identity(2, 2) / 2.0), DomainError);
}

TEST(QidChannel, OnAEqualsTracePreservingFamily) {
  for (int d = 2; d <= 3; ++d) {
    for (const Complex xi2 : valid_xi2_grid(d)) {
      const SuperOperator channel = qid_channel(d, xi2, Qudit::A);
      const SuperOperator expected = special(kind::FamilyTP{std::norm(xi2) / d}, d);
      EXPECT_LE(max_abs_diff(channel, expected), 1e-10);
    }
    EXPECT_LE(max_abs_diff(qid_channel(d, optimal_xi2(d), Qudit::A), special(kind::UniversalNOT{}, d)),
              1e-10);
  }
}

TEST(QidChannel, OverlapWithIdealInversionGrowsWithXi2) {
  for (int d = 2; d <= 3; ++d) {
    Rng rng = make_rng(73, static_cast<std::uint64_t>(d));
    const ComplexMatrix rho = projector(random_pure(d, rng));
    const ComplexMatrix perp = (ComplexMatrix::Identity(d, d) - rho) / double(d - 1);
    double previous = -1.0;
    for (int i = 0; i <= 10; ++i) {
      const double xi2 = optimal_xi2(d).real() * i / 10.0;
      const double overlap = (perp * run_qid(d, xi2, rho).a).trace().real();
      EXPECT_GT(overlap, previous);
      previous = overlap;
    }
  }
}

TEST(UniversalNot, Examples) {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected.diagonal() << 1.0 / 3.0, 2.0 / 3.0;
  EXPECT_LE(max_abs_diff(universal_not_apply(zero), expected), 1e-15);
  for (int d = 2; d <= 5; ++d) {
    const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / double(d);
    EXPECT_LE(max_abs_diff(universal_not_apply(mixed), mixed), 1e-15);
  }
  Rng rng = make_rng(74);
  const ComplexVector psi = random_pure(3, rng);
  const ComplexMatrix inverted = universal_not_apply(projector(psi));
  EXPECT_NEAR(psi.dot(inverted * psi).real(), 0.25, 1e-12);
  EXPECT_THROW(universal_not_apply(ComplexMatrix::Identity(2, 2)), InvalidStateError);
}

TEST(UniversalNot, AgreesWithSuperoperatorAndYieldsDensities) {
  for_all(20, 75, [](Rng& rng) {
    const int d = testing::uniform_int(rng, 2, 6);
    const ComplexMatrix rho = random_density(d, rng);
    const ComplexMatrix out = universal_not_apply(rho);
    EXPECT_TRUE(is_density(out));
    EXPECT_LE(max_abs_diff(out, apply_ordinary(special(kind::UniversalNOT{}, d), rho)), 1e-12);
  });
}

TEST(GavEstimator, SingleStateIsExact) {
  for (int d = 2; d <= 3; ++d) {
    const std::vector<ComplexVector> one = {basis_vector(d, 0)};
    const ComplexMatrix p = projector(one.front());
    const SuperOperator expected = double(d) * SuperOperator::conjugation(p, p);
    EXPECT_LE(max_abs_diff(gav_from_states(d, one), expected), 1e-15);
  }
}

TEST(GavEstimator, MonteCarloConverges) {
  for (int d = 2; d <= 3; ++d) {
    const SuperOperator est = gav_monte_carlo(d, 100000, 1);
    const SuperOperator gav = special(kind::GAV{}, d);
    EXPECT_LE(max_abs_diff(est, gav), 0.02);
    Rng rng = make_rng(76, static_cast<std::uint64_t>(d));
    const ComplexMatrix rho = random_density(d, rng);
    const ComplexMatrix expected = (ComplexMatrix::Identity(d, d) + rho) / double(d + 1);
    EXPECT_LE(max_abs_diff(apply_ordinary(est, rho), expected), 0.02);
  }
}

TEST(GavEstimator, DoublingSamplesReducesMedianDeviation) {
  for (int d = 2; d <= 3; ++d) {
    const SuperOperator gav = special(kind::GAV{}, d);
    std::vector<double> small, large;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      small.push_back(max_abs_diff(gav_monte_carlo(d, 20000, seed), gav));
      large.push_back(max_abs_diff(gav_monte_carlo(d, 40000, seed + 100), gav));
    }
    std::sort(small.begin(), small.end());
    std::sort(large.begin(), large.end());
    EXPECT_LT(large[4] + large[3], small[4] + small[3]);
  }
}

TEST(GavEstimator, DeterministicGivenSeed) {
  EXPECT_EQ(max_abs_diff(gav_monte_carlo(2, 5000, 9), gav_monte_carlo(2, 5000, 9)), 0.0);
  EXPECT_THROW(gav_monte_carlo(2, 0, 9), DomainError);
}

TEST(PovmInversion, EqualsUniversalNot) {
  for (int d = 2; d <= 6; ++d) {
    EXPECT_LE(max_abs_diff(povm_inversion_channel(d), special(kind::UniversalNOT{}, d)), 1e-12);
  }
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected.diagonal() << 1.0 / 3.0, 2.0 / 3.0;
  EXPECT_LE(max_abs_diff(apply_ordinary(povm_inversion_channel(2), zero), expected), 1e-14);
}

}  // namespace
}  // namespace qinvert
