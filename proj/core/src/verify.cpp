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

#include "qinvert/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "qinvert/entanglement.hpp"
#include "qinvert/errors.hpp"
#include "qinvert/qid.hpp"
#include "qinvert/superoperator.hpp"

namespace qinvert {
namespace {

constexpr double kTol = kTolerance;

// Collects checks by name, keeping first-seen order and the worst residual.
class Battery {
 public:
  void record(const std::string& name, double residual, double tolerance = kTol) {
    auto it = std::find_if(checks_.begin(), checks_.end(),
                           [&](const CheckResult& c) { return c.name == name; });
    if (it == checks_.end()) {
      checks_.push_back({name, residual <= tolerance, residual, tolerance});
      return;
    }
    it->residual = std::max(it->residual, residual);
    it->passed = it->residual <= it->tolerance;
  }

  // Boolean expectation: residual 0 on agreement, 1 on disagreement.
  void expect(const std::string& name, bool ok) { record(name, ok ? 0.0 : 1.0, 0.0); }

  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  std::vector<CheckResult> checks_;
};

SuperOperator random_superop(int dim, Rng& rng) {
  const int n = dim * dim;
  std::normal_distribution<double> normal;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, k) = Complex(re, im);
    }
  }
  return SuperOperator(dim, std::move(m));
}

// sum_alpha mu_alpha |t_alpha)(t_alpha| with orthonormal eigenoperators drawn
// from a Haar unitary on operator space.
SuperOperator random_lr_hermitian(int dim, Rng& rng, bool nonnegative) {
  const int n = dim * dim;
  const ComplexMatrix v = haar_random_unitary(n, rng);
  std::normal_distribution<double> normal;
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i) {
    mu(i) = nonnegative ? std::abs(normal(rng)) : normal(rng);
  }
  ComplexMatrix m = v * mu.cast<Complex>().asDiagonal() * v.adjoint();
  return SuperOperator(dim, 0.5 * (m + m.adjoint()));
}

void algebra_suite(Battery& b, int d, std::uint64_t seed) {
  const double dd = d;
  const auto id_ord = special(kind::IdentityOrdinary{}, d);
  const auto id_lr = special(kind::IdentityLR{}, d);
  const auto tf = special(kind::TracefreeProj{}, d);
  const auto ps = special(kind::SymProj{}, d);
  const auto pa = special(kind::AntisymProj{}, d);
  const auto tr = special(kind::Transpose{}, d);
  const auto inv = special(kind::Inverter{1.0}, d);
  const auto gav = special(kind::GAV{}, d);

  b.record("outer-product basis orthonormal", outer_product_basis(d).orthonormality_residual(),
           1e-12);
  b.record("SU(D) generators + I/sqrt(D) orthonormal",
           generator_basis(d).orthonormality_residual(), 1e-12);

  b.record("IdentityLR == IdentityOrdinary/D + TracefreeProj",
           max_abs_diff(id_lr, id_ord / dd + tf));
  b.record("IdentityLR == SymProj + AntisymProj", max_abs_diff(id_lr, ps + pa));
  b.record("Transpose == SymProj - AntisymProj", max_abs_diff(tr, ps - pa));
  b.record("SymProj == (IdentityLR + Transpose)/2", max_abs_diff(ps, (id_lr + tr) / 2.0));
  b.record("AntisymProj == (IdentityLR - Transpose)/2", max_abs_diff(pa, (id_lr - tr) / 2.0));
  b.record("Transpose o Transpose == IdentityOrdinary",
           max_abs_diff(compose_ordinary(tr, tr), id_ord));
  b.record("IdentityLR o Transpose == IdentityLR", max_abs_diff(compose_ordinary(id_lr, tr), id_lr));
  b.record("IdentityLR o IdentityLR == D IdentityLR",
           max_abs_diff(compose_ordinary(id_lr, id_lr), dd * id_lr));
  b.record("2 AntisymProj o Transpose == IdentityLR - IdentityOrdinary",
           max_abs_diff(2.0 * compose_ordinary(pa, tr), id_lr - id_ord));
  b.record("2 SymProj o Transpose == IdentityLR + IdentityOrdinary",
           max_abs_diff(2.0 * compose_ordinary(ps, tr), id_lr + id_ord));
  b.record("IdentityLR + IdentityOrdinary == (D+1) GAV",
           max_abs_diff(id_lr + id_ord, (dd + 1.0) * gav));
  b.record("IdentityLR - IdentityOrdinary == Inverter(1)", max_abs_diff(id_lr - id_ord, inv));
  b.record("TracefreeProj^# == IdentityOrdinary - IdentityLR/D",
           max_abs_diff(sharp(tf), id_ord - id_lr / dd));
  b.record("IdentityOrdinary^# == IdentityLR", max_abs_diff(sharp(id_ord), id_lr));
  b.record("Transpose == Transpose^# == Transpose^dag == Transpose^x",
           std::max({max_abs_diff(sharp(tr), tr), max_abs_diff(adjoint_leftright(tr), tr),
                     max_abs_diff(adjoint_cross(tr), tr)}));
  b.record("TracefreeProj == TracefreeProj^dag == TracefreeProj^x",
           std::max(max_abs_diff(adjoint_leftright(tf), tf), max_abs_diff(adjoint_cross(tf), tf)));
  b.record("Inverter == Inverter^dag == Inverter^x == -Inverter^#",
           std::max({max_abs_diff(adjoint_leftright(inv), inv), max_abs_diff(adjoint_cross(inv), inv),
                     max_abs_diff(sharp(inv), -1.0 * inv)}));
  b.record("GAV == GAV^dag == GAV^x == GAV^#",
           std::max({max_abs_diff(adjoint_leftright(gav), gav), max_abs_diff(adjoint_cross(gav), gav),
                     max_abs_diff(sharp(gav), gav)}));
  if (d == 2) {
    const auto yy = SuperOperator::conjugation(pauli_y(), pauli_y());
    b.record("D=2: Inverter(1) == sigma_y (.) sigma_y o Transpose",
             max_abs_diff(inv, compose_ordinary(yy, tr)));
  }

  Rng rng = make_rng(seed, static_cast<std::uint64_t>(d));
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_superop(d, rng);
    const auto c = random_superop(d, rng);
    const ComplexMatrix x = random_superop(d, rng).lr_matrix().topLeftCorner(d, d);
    b.record("sharp is an involution", max_abs_diff(sharp(sharp(a)), a), 0.0);
    b.record("(B o A)^# == B^# A^#",
             max_abs_diff(sharp(compose_ordinary(c, a)), multiply_leftright(sharp(c), sharp(a))));
    b.record("(A^#)^dag == (A^x)^#",
             max_abs_diff(adjoint_leftright(sharp(a)), sharp(adjoint_cross(a))));
    b.record("A^# left-right == A ordinary",
             max_abs(apply_leftright(sharp(a), x) - apply_ordinary(a, x)));
    b.record("(B o A)(X) == B(A(X))",
             max_abs(apply_ordinary(compose_ordinary(c, a), x) -
                     apply_ordinary(c, apply_ordinary(a, x))));
    const ComplexMatrix y = random_superop(d, rng).lr_matrix().topLeftCorner(d, d);
    b.record("tr([A^x(Y)]^dag X) == tr(Y^dag A(X))",
             std::abs(hs_inner(apply_ordinary(adjoint_cross(a), y), x) -
                      hs_inner(y, apply_ordinary(a, x))));
    double fund = 0.0;
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const ComplexMatrix image = apply_ordinary(a, outer_product_basis(d).elements[j * d + k]);
        for (int l = 0; l < d; ++l) {
          for (int m = 0; m < d; ++m) {
            fund = std::max(fund, std::abs(image(l, m) - a.element(l, j, m, k)));
          }
        }
      }
    }
    b.record("<l|A(|j><k|)|m> == A_{lj,mk}", fund, 1e-12);
  }
}

void hermiticity_suite(Battery& b, int d, std::uint64_t seed) {
  Rng rng = make_rng(seed, 100 + static_cast<std::uint64_t>(d));
  int disagreements = 0;
  int hermitian_misclassified = 0;
  int perturbed_misclassified = 0;
  std::uniform_real_distribution<double> scale(1e-3, 1.0);
  for (int i = 0; i < 200; ++i) {
    const bool hermitian = i < 100;
    SuperOperator s = random_lr_hermitian(d, rng, false);
    if (!hermitian) {
      s += scale(rng) * random_superop(d, rng);
    }
    const bool lr = is_leftright_hermitian(s);
    const bool hp = preserves_hermiticity(s);
    disagreements += lr != hp;
    if (hermitian && !lr) ++hermitian_misclassified;
    if (!hermitian && lr) ++perturbed_misclassified;
  }
  b.record("left-right Hermitian <=> Hermiticity preserving (200 random)", disagreements, 0.0);
  b.record("Hermitian constructions classified Hermitian", hermitian_misclassified, 0.0);
  b.record("perturbed constructions classified non-Hermitian", perturbed_misclassified, 0.0);

  const auto cp = random_lr_hermitian(d, rng, true);
  b.expect("random CP map preserves Hermiticity", preserves_hermiticity(cp) && is_leftright_hermitian(cp));
  const auto id_times_i = Complex(0.0, 1.0) * special(kind::IdentityOrdinary{}, d);
  b.expect("i * IdentityOrdinary is neither",
           !preserves_hermiticity(id_times_i) && !is_leftright_hermitian(id_times_i));
}

void purity_suite(Battery& b, int dmin, int dmax, std::uint64_t seed) {
  for (int d1 = dmin; d1 <= dmax; ++d1) {
    for (int d2 = d1; d2 <= dmax; ++d2) {
      Rng rng = make_rng(seed, 1000 + static_cast<std::uint64_t>(d1 * 16 + d2));
      const Dims dims{d1, d2};
      const int n = dims.total();
      double worst_violation = 0.0;
      double min_full_rank_gap = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 500; ++i) {
        const int rank = 1 + i % n;
        const auto rho = BipartiteState::density(dims, random_density(n, rng, rank));
        const double gap = mixed_inverter_quantity(rho);
        worst_violation = std::max(worst_violation, -gap);
        if (rank == n) min_full_rank_gap = std::min(min_full_rank_gap, gap);
      }
      b.record("1 + tr(rho_AB^2) >= tr(rho_A^2) + tr(rho_B^2) (500 per dim pair)",
               std::max(0.0, worst_violation), 1e-12);
      b.expect("no random full-rank sample saturates", min_full_rank_gap > 1e-10);

      for (int i = 0; i < 10; ++i) {
        const ComplexVector a = haar_random_vector(d1, rng);
        const ComplexMatrix pure_a = a * a.adjoint();
        const ComplexMatrix mixed_b = random_density(d2, rng);
        const auto product = BipartiteState::density(dims, kron(pure_a, mixed_b));
        b.record("saturation for pure (x) mixed products",
                 std::abs(mixed_inverter_quantity(product)), 1e-10);
        const ComplexMatrix mixed_a = random_density(d1, rng);
        const ComplexVector v = haar_random_vector(d2, rng);
        const auto other = BipartiteState::density(dims, kron(mixed_a, ComplexMatrix(v * v.adjoint())));
        b.record("saturation for mixed (x) pure products",
                 std::abs(mixed_inverter_quantity(other)), 1e-10);
      }
    }
  }
}

void family_suite(Battery& b, int d, std::uint64_t seed) {
  const double dd = d;
  for (double nu : {0.5, 1.0, 1.0 / (dd - 1.0)}) {
    const auto spectrum = is_completely_positive(special(kind::Inverter{nu}, d)).spectrum;
    double residual = std::abs(spectrum.front() + (dd - 1.0) * nu);
    for (std::size_t i = 1; i < spectrum.size(); ++i) {
      residual = std::max(residual, std::abs(spectrum[i] - nu));
    }
    b.record("Inverter(nu) spectrum {nu x (D^2-1), -(D-1) nu x 1}", residual);
  }

  const double cp_max = dd / (dd * dd - 1.0);
  const double pos_max = 1.0 / (dd - 1.0);
  std::vector<std::pair<double, bool>> cp_grid;
  std::vector<std::pair<double, bool>> pos_grid;
  for (int i = 0; i <= 8; ++i) {
    cp_grid.emplace_back(cp_max * i / 8.0, true);
    pos_grid.emplace_back(pos_max * i / 8.0, true);
  }
  for (double eps : {-1e-6, 1e-6}) {
    cp_grid.emplace_back(0.0 + eps, eps > 0);
    cp_grid.emplace_back(cp_max + eps, eps < 0);
    pos_grid.emplace_back(0.0 + eps, eps > 0);
    pos_grid.emplace_back(pos_max + eps, eps < 0);
  }
  int cp_mismatch = 0;
  for (auto [nu, expected] : cp_grid) {
    const bool cp = is_completely_positive(special(kind::FamilyTP{nu}, d)).completely_positive;
    cp_mismatch += (cp != expected) + (is_cp_family(nu, d) != expected);
  }
  b.record("FamilyTP(nu) CP iff 0 <= nu <= D/(D^2-1)", cp_mismatch, 0.0);
  int pos_mismatch = 0;
  for (auto [nu, expected] : pos_grid) {
    const bool sampled = is_positive_sampled(special(kind::FamilyTP{nu}, d), 50, seed);
    pos_mismatch += (is_positive_family(nu, d) != expected) + (sampled != expected);
  }
  b.record("FamilyTP(nu) positive iff 0 <= nu <= 1/(D-1)", pos_mismatch, 0.0);

  const auto unot = special(kind::UniversalNOT{}, d);
  const auto gav = special(kind::GAV{}, d);
  const auto inv_tp = special(kind::InverterTP{}, d);
  b.record("UniversalNOT == (InverterTP + GAV)/2", max_abs_diff(unot, (inv_tp + gav) / 2.0), 1e-12);
  b.record("InverterTP o GAV == UniversalNOT", max_abs_diff(compose_ordinary(inv_tp, gav), unot),
           1e-12);
  b.record("UniversalNOT == FamilyTP(D/(D^2-1))",
           max_abs_diff(unot, special(kind::FamilyTP{cp_max}, d)), 1e-12);
  b.record("GAV == FamilyTP(1/(D+1))",
           max_abs_diff(gav, special(kind::FamilyTP{1.0 / (dd + 1.0)}, d)), 1e-12);
  b.record("InverterTP == FamilyTP(1/(D-1))",
           max_abs_diff(inv_tp, special(kind::FamilyTP{pos_max}, d)), 1e-12);
  b.expect("UniversalNOT CP with zero eigenvalue", [&] {
    const auto r = is_completely_positive(unot);
    return r.completely_positive && std::abs(r.spectrum.front()) <= kTol;
  }());

  int tp_mismatch = 0;
  for (auto [nu, expected] : pos_grid) {
    tp_mismatch += !is_trace_preserving(special(kind::FamilyTP{nu}, d));
  }
  tp_mismatch += is_trace_preserving(special(kind::Inverter{1.0}, d)) != (d == 2);
  tp_mismatch += !is_trace_preserving(inv_tp) + !is_trace_preserving(unot) + !is_trace_preserving(gav);
  b.record("trace preservation of the family", tp_mismatch, 0.0);

  b.expect("Inverter(1) commutes with unitaries",
           commutes_with_unitaries(special(kind::Inverter{1.0}, d), 20, seed));
  b.expect("GAV commutes with unitaries", commutes_with_unitaries(gav, 20, seed));
  b.expect("Transpose does not commute with unitaries",
           !commutes_with_unitaries(special(kind::Transpose{}, d), 20, seed));

  Rng rng = make_rng(seed, 2000 + static_cast<std::uint64_t>(d));
  std::uniform_real_distribution<double> param(-2.0, 2.0);
  const int triples = d <= 3 ? 100 : 10;
  for (int i = 0; i < triples; ++i) {
    const double eta = param(rng);
    const double nu = param(rng);
    const auto g = special(kind::Family{eta, nu}, d);
    const ComplexVector psi = random_pure(d * d, rng);
    const ComplexMatrix proj = psi * psi.adjoint();
    const double lhs = psi.dot(apply_ordinary(tensor_superop(g, g), proj) * psi).real();
    const double purity_a = partial_trace(proj, {d, d}, Subsystem::A).squaredNorm();
    const double rhs = eta * eta + nu * nu + 2.0 * eta * nu * purity_a;
    b.record("<Psi|(G (x) G)(|Psi><Psi|)|Psi> == eta^2 + nu^2 + 2 eta nu tr(rho_A^2)",
             std::abs(lhs - rhs));
  }
}

void qid_suite(Battery& b, int d, std::uint64_t seed) {
  const double dd = d;
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix u = build_uabc(d);
  b.record("U_ABC unitary", max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())),
           1e-11);

  const double edge = 1.0 / std::sqrt(dd * dd - 1.0);
  const std::vector<Complex> grid{0.0, 0.5, Complex(0.3, 0.4), -edge, Complex(0.0, 0.6),
                                  optimal_xi2(d)};
  Rng rng = make_rng(seed, 3000 + static_cast<std::uint64_t>(d));
  for (const Complex xi2 : grid) {
    const QidSetup setup = make_setup(d, xi2);
    b.record("ancilla normalization", setup.normalization_residual(), 1e-12);
    for (int i = 0; i < 5; ++i) {
      const ComplexMatrix rho = random_density(d, rng);
      const QidOutputs sim = run_qid_linear(u, setup, rho);
      const QidOutputs expected = qid_closed_form(setup, rho);
      b.record("qudit A marginal matches closed form", max_abs(sim.a - expected.a));
      b.record("qudit B marginal matches closed form", max_abs(sim.b - expected.b));
      b.record("qudit C marginal matches closed form", max_abs(sim.c - expected.c));
      b.record("marginals have unit trace",
               std::max({std::abs(sim.a.trace() - 1.0), std::abs(sim.b.trace() - 1.0),
                         std::abs(sim.c.trace() - 1.0)}));
    }
  }

  const ComplexMatrix rho = random_density(d, rng);
  const QidOutputs opt = run_qid_linear(u, make_setup(d, optimal_xi2(d)), rho);
  const double w = 1.0 / (dd * dd - 1.0);
  b.record("optimal xi2: qudit B == (1 - 1/(D^2-1)) rho + I/(D(D^2-1))",
           max_abs(opt.b - ((1.0 - w) * rho + (w / dd) * id)));
  b.record("optimal xi2: qudit A == universal-NOT(rho)",
           max_abs(opt.a - universal_not_apply(rho)));

  const SuperOperator channel_a = qid_channel(d, optimal_xi2(d), Qudit::A);
  b.record("QID channel on A at optimal xi2 == UniversalNOT (tomography)",
           max_abs_diff(channel_a, special(kind::UniversalNOT{}, d)));
  const Complex mid(0.3, 0.4);
  b.record("QID channel on A == FamilyTP(|xi2|^2/D) (tomography)",
           max_abs_diff(qid_channel(d, mid, Qudit::A), special(kind::FamilyTP{std::norm(mid) / dd}, d)));

  b.record("xi1 minimum -1/sqrt(D^2-1) at xi2 = D/sqrt(D^2-1)",
           std::abs(make_setup(d, optimal_xi2(d)).xi1 + edge), 1e-12);
  b.record("xi1 maximum D/sqrt(D^2-1) at xi2 = -1/sqrt(D^2-1)",
           std::abs(make_setup(d, -edge).xi1 - dd * edge), 1e-12);
  b.record("|xi2|^2 maximum D^2/(D^2-1)", std::abs(std::norm(optimal_xi2(d)) - dd * dd * edge * edge),
           1e-12);

  b.record("InverterTP o GAV == UniversalNOT", max_abs_diff(povm_inversion_channel(d),
                                                            special(kind::UniversalNOT{}, d)),
           1e-12);

  // Overlap with the ideal inversion grows with |xi2|^2.
  const ComplexVector psi = haar_random_vector(d, rng);
  const ComplexMatrix pure = psi * psi.adjoint();
  const ComplexMatrix perp = (id - pure) / (dd - 1.0);
  double previous = -1.0;
  int non_increasing = 0;
  for (int i = 0; i <= 6; ++i) {
    const Complex xi2 = optimal_xi2(d) * (i / 6.0);
    const double overlap = hs_inner(perp, run_qid_linear(u, make_setup(d, xi2), pure).a).real();
    non_increasing += overlap <= previous;
    previous = overlap;
  }
  b.record("overlap with ideal inversion strictly increasing in |xi2|^2", non_increasing, 0.0);
}

}  // namespace

Suite parse_suite(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "algebra") return Suite::Algebra;
  if (key == "appendixb") return Suite::HermiticityEquivalence;
  if (key == "appendixc") return Suite::PurityInequality;
  if (key == "family") return Suite::Family;
  if (key == "qid") return Suite::Qid;
  if (key == "all") return Suite::All;
  throw std::invalid_argument("unknown suite '" + std::string(name) +
                              "' (expected algebra, appendixB, appendixC, family, qid, all)");
}

std::string suite_name(Suite suite) {
  switch (suite) {
    case Suite::Algebra:
      return "algebra";
    case Suite::HermiticityEquivalence:
      return "appendixB";
    case Suite::PurityInequality:
      return "appendixC";
    case Suite::Family:
      return "family";
    case Suite::Qid:
      return "qid";
    case Suite::All:
      break;
  }
  return "all";
}

int max_suite_dim(Suite suite) { return suite == Suite::Qid ? 4 : 6; }

std::vector<CheckResult> run_suite(Suite suite, int dmin, int dmax, std::uint64_t seed) {
  if (dmin < 2 || dmin > dmax || dmax > max_suite_dim(suite)) {
    throw DomainError("dimension range must satisfy 2 <= dmin <= dmax <= " +
                      std::to_string(max_suite_dim(suite)) + " for suite " + suite_name(suite));
  }
  Battery battery;
  auto wants = [&](Suite s) { return suite == s || suite == Suite::All; };
  if (wants(Suite::Algebra)) {
    for (int d = dmin; d <= dmax; ++d) algebra_suite(battery, d, seed);
  }
  if (wants(Suite::HermiticityEquivalence)) {
    for (int d = dmin; d <= dmax; ++d) hermiticity_suite(battery, d, seed);
  }
  if (wants(Suite::PurityInequality)) {
    purity_suite(battery, dmin, dmax, seed);
  }
  if (wants(Suite::Family)) {
    for (int d = dmin; d <= dmax; ++d) family_suite(battery, d, seed);
  }
  if (wants(Suite::Qid)) {
    // The D^3 evolution is capped at D = 4 inside the combined battery.
    for (int d = dmin; d <= std::min(dmax, max_suite_dim(Suite::Qid)); ++d) {
      qid_suite(battery, d, seed);
    }
  }
  return battery.take();
}

}  // namespace qinvert
