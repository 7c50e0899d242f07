// Copyright 2026 The mbqc-correlator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "mbqc/correlator.hpp"
#include "mbqc/csign.hpp"
#include "mbqc/density.hpp"
#include "mbqc/error.hpp"
#include "mbqc/gate_plan.hpp"

namespace mbqc {
namespace {

PauliString P(std::string_view s) { return PauliString::from_str(s); }
OperatorExpression E(std::string_view s) { return OperatorExpression::from_pauli(P(s)); }

BranchEnsemble noisy_cluster(const Graph& g, Perturbation::Model m, double beta, std::uint64_t seed = 1) {
  return perturb(build_cluster_dense(g), {m, beta, seed, {}});
}

std::vector<GatePlan> all_plans() {
  return {identity_plan(chain(6), 1, 1),
          identity_plan(chain(8), 1, 2),
          hadamard_plan(),
          pi2_plan(),
          zrot_plan(0.7),
          diag_identity_plan_2d(lattice_region(diagonal_region_sites(3, false)), 3),
          csign_plan(),
          concatenate(hadamard_plan(), hadamard_plan()),
          concatenate(pi2_plan(), pi2_plan()),
          concatenate(zrot_plan(0.3), hadamard_plan())};
}

TEST(Post, IdentityOnCluster) {
  const GatePlan p = identity_plan(chain(6), 1, 1);
  const StateVector c = build_cluster_dense(p.graph);
  EXPECT_NEAR(post_measurement_expectation(c, p, P("X"), P("X")), 1.0, 1e-10);
  EXPECT_NEAR(post_measurement_expectation(c, p, P("Y"), P("Y")), -1.0, 1e-10);
  EXPECT_EQ(post_measurement_expectation(build_cluster_tableau(p.graph), p, P("Z"), P("Z")), 1.0);
}

TEST(Post, IdentityObservableIsOne) {
  const GatePlan p = hadamard_plan();
  const auto e = noisy_cluster(p.graph, Perturbation::Model::RandomLocalRotation, 0.5, 4);
  EXPECT_NEAR(post_measurement_expectation(e, p, P("I"), P("I")), 1.0, 1e-12);
}

TEST(Post, ZrotPerturbedMatchesPreMeasurementForm) {
  const GatePlan p = zrot_plan(0.7);
  const auto e = noisy_cluster(p.graph, Perturbation::Model::LocalZRotation, 0.2);
  const double post = post_measurement_expectation(e, p, P("Z"), P("Z"));
  const double pre = pre_measurement_expectation(e, derive_pre_measurement_expression(p, P("Z"), P("Z")));
  EXPECT_NEAR(post, pre, 1e-9);
  EXPECT_LT(post, 1.0 - 1e-3);
}

TEST(Post, ArgumentChecks) {
  const GatePlan p = hadamard_plan();
  const StateVector c = build_cluster_dense(p.graph);
  EXPECT_THROW(post_measurement_expectation(c, p, P("XX"), P("X")), DimensionError);
  EXPECT_THROW(post_measurement_expectation(c, p, P("iX"), P("X")), UnsupportedError);
  EXPECT_THROW(post_measurement_expectation(build_cluster_dense(chain(5)), p, P("X"), P("X")), DimensionError);
  const GatePlan r = zrot_plan(0.4);
  EXPECT_THROW(post_measurement_expectation(build_cluster_tableau(r.graph), r, P("Z"), P("Z")), UnsupportedError);
}

TEST(Derive, PrintedExpressions) {
  EXPECT_EQ(derive_pre_measurement_expression(identity_plan(chain(8), 1, 2), P("X"), P("X")), E("ZXIXIXZI"));
  EXPECT_EQ(derive_pre_measurement_expression(hadamard_plan(), P("Z"), P("X")), E("IZYYIXZ"));
  EXPECT_EQ(derive_pre_measurement_expression(zrot_plan(0.9), P("Z"), P("Z")), E("IZXIXZI"));
  EXPECT_EQ(derive_pre_measurement_expression(pi2_plan(), P("X"), P("-Y")), E("-ZXIYXYZ"));
}

TEST(Derive, TermsAreCanonical) {
  const auto e = derive_pre_measurement_expression(zrot_plan(0.9), P("X"), P("X"));
  for (std::size_t i = 0; i < e.terms().size(); ++i) {
    EXPECT_EQ(e.terms()[i].op.phase(), Phase::plus_one());
    for (std::size_t j = i + 1; j < e.terms().size(); ++j) EXPECT_FALSE(e.terms()[i].op == e.terms()[j].op);
  }
  EXPECT_TRUE(derive_symbolic(zrot_plan(0.9), P("X"), P("Y")).is_hermitian());
}

TEST(Pre, ClusterAndMaximallyMixed) {
  const GatePlan s = pi2_plan();
  const auto expr = derive_pre_measurement_expression(s, P("X"), P("-Y"));
  EXPECT_NEAR(pre_measurement_expectation(build_cluster_dense(s.graph), expr), 1.0, 1e-12);
  EXPECT_EQ(pre_measurement_expectation(build_cluster_tableau(s.graph), expr), 1.0);
  const auto mixed = BranchEnsemble::maximally_mixed(7);
  EXPECT_NEAR(pre_measurement_expectation(mixed, expr), 0.0, 1e-12);
  EXPECT_NEAR(pre_measurement_expectation(mixed, expr + OperatorExpression::identity(7, 0.25)), 0.25, 1e-12);
}

TEST(Equivalence, AllPlansAllPairsOnPerturbedInputs) {
  for (const GatePlan& p : all_plans()) {
    const auto e = noisy_cluster(p.graph, Perturbation::Model::RandomLocalRotation, 0.45, 77);
    std::vector<OperatorExpression> obs;
    for (const auto& q : resource_pauli_basis(p.resource_register().size())) obs.push_back(OperatorExpression::from_pauli(q));
    const auto post = post_measurement_expectations(e, p, obs);
    const auto basis = resource_pauli_basis(p.resource_register().size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto [a, b] = split_resource_pauli(p, basis[k]);
      const double pre = pre_measurement_expectation(e, derive_pre_measurement_expression(p, a, b));
      EXPECT_NEAR(post[k], pre, 1e-9) << p.label << " " << basis[k].str();
    }
  }
}

TEST(Equivalence, DepolarizedInput) {
  const GatePlan p = identity_plan(chain(6), 1, 1);
  const auto e = noisy_cluster(p.graph, Perturbation::Model::Depolarizing, 0.2);
  for (const char* b : {"X", "Y", "Z"}) {
    const double post = post_measurement_expectation(e, p, P(b), P(b));
    EXPECT_NEAR(post, pre_measurement_expectation(e, derive_pre_measurement_expression(p, P(b), P(b))), 1e-10);
  }
}

TEST(StabilizerForm, IdentityZZ) {
  const GatePlan p = identity_plan(chain(8), 1, 2);
  const auto f = stabilizer_product_form(p, P("Z"), P("Z"));
  ASSERT_TRUE(f.pure_stabilizer());
  ASSERT_EQ(f.monomials.size(), 1u);
  EXPECT_EQ(f.monomials[0].sites, (std::vector<std::size_t>{2, 4}));
  const auto g = stabilizer_product_form(p, P("X"), P("X"));
  EXPECT_EQ(g.monomials[0].sites, (std::vector<std::size_t>{1, 3, 5}));
}

TEST(StabilizerForm, HadamardXZ) {
  const auto f = stabilizer_product_form(hadamard_plan(), P("X"), P("Z"));
  ASSERT_EQ(f.monomials.size(), 1u);
  EXPECT_EQ(f.monomials[0].sites, (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_TRUE(f.pure_stabilizer());
}

TEST(StabilizerForm, Pi2CorrelationIsAPureProduct) {
  const auto f = stabilizer_product_form(pi2_plan(), P("X"), P("-Y"));
  ASSERT_EQ(f.monomials.size(), 1u);
  EXPECT_EQ(f.monomials[0].sites, (std::vector<std::size_t>{1, 3, 4, 5}));
  EXPECT_EQ(f.monomials[0].coefficient, TrigPolynomial::constant(1));
}

TEST(StabilizerForm, ZrotTwoPartExpressionExpandsExactly) {
  const GatePlan p = zrot_plan(0.7);
  const auto c = TrigPolynomial::cos_of(0);
  const auto s = TrigPolynomial::sin_of(0);
  const PauliString rem = P("ZYZIIII");
  StabilizerProductForm printed{7,
                                {{c * c, PauliString(7), {1, 3, 5}},
                                 {s * s, PauliString(7), {1, 3, 4, 5}},
                                 {c * s, rem, {2, 3, 5}},
                                 {-(c * s), rem, {2, 3, 4, 5}}}};
  const SymbolicExpression target =
      derive_symbolic(p, P("X"), P("X")).scaled(c) - derive_symbolic(p, P("X"), P("Y")).scaled(s);
  EXPECT_EQ(printed.expand(p.graph), target);
}

TEST(StabilizerForm, MechanicalFormExpandsForEveryPair) {
  for (const GatePlan& p : all_plans()) {
    for (const auto& q : resource_pauli_basis(p.resource_register().size())) {
      const auto [a, b] = split_resource_pauli(p, q);
      const auto f = stabilizer_product_form(p, a, b);
      EXPECT_EQ(f.expand(p.graph), derive_symbolic(p, a, b)) << p.label << " " << q.str();
    }
  }
}

TEST(StabilizerForm, DiagonalProductsMatchTheEndOperators) {
  const std::size_t n = 3;
  const GatePlan p = diag_identity_plan_2d(lattice_region(diagonal_region_sites(n, true)), n);
  const Graph& g = p.graph;
  auto at = [&](int r, int c) { return g.vertex_at_or_throw({r, c}); };
  const int N = static_cast<int>(n);
  PauliString diag(g.num_vertices());
  PauliString para(g.num_vertices());
  for (int i = 1; i <= N; ++i) diag *= cluster_stabilizer(g, at(i, i));
  for (int i = 1; i <= N - 1; ++i) para *= cluster_stabilizer(g, at(i + 1, i));

  PauliString expect_diag(g.num_vertices());
  for (int i = 1; i <= N; ++i) expect_diag.set(at(i, i), 'X');
  for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {N, N + 1}, {N + 1, N}}) expect_diag.set(at(r, c), 'Z');
  PauliString expect_para(g.num_vertices());
  for (int i = 1; i <= N - 1; ++i) expect_para.set(at(i + 1, i), 'X');
  for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 1}, {N, N}, {2, 0}, {N + 1, N - 1}}) expect_para.set(at(r, c), 'Z');

  EXPECT_EQ(diag, expect_diag);
  EXPECT_EQ(para, expect_para);
  EXPECT_EQ(derive_pre_measurement_expression(p, P("X"), P("X")), OperatorExpression::from_pauli(diag));
  EXPECT_EQ(derive_pre_measurement_expression(p, P("Z"), P("Z")), OperatorExpression::from_pauli(para));
}

TEST(StabilizerForm, CsignTargetsArePureProducts) {
  const GatePlan p = csign_plan();
  for (const auto& t : p.targets) {
    const auto form = stabilizer_product_form(p, SymbolicExpression::from_pauli(t.observable.terms()[0].op));
    EXPECT_TRUE(form.pure_stabilizer()) << t.label;
    EXPECT_EQ(form.expand(p.graph), derive_symbolic(p, SymbolicExpression::from_pauli(t.observable.terms()[0].op)));
  }
}

TEST(Branches, CliffordBranchesCoincide) {
  const GatePlan p = hadamard_plan();
  std::vector<StateVector> leaves;
  const auto reg = p.resource_register();
  for_each_corrected_branch(build_cluster_dense(p.graph), p, [&](const OutcomeRecord&, double prob, const StateVector& s) {
    EXPECT_NEAR(prob, 1.0 / 32, 1e-12);
    leaves.push_back(s);
  });
  ASSERT_EQ(leaves.size(), 32u);
  const auto ref = reduced_density(leaves.front(), reg);
  for (const auto& s : leaves) EXPECT_LT((reduced_density(s, reg) - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Tomography, IdentityOnClusterIsBellLike) {
  const GatePlan p = identity_plan(chain(6), 1, 1);
  const auto rho = resource_tomography(build_cluster_dense(p.graph), p);
  EXPECT_NEAR((rho * pauli_matrix(P("XX"))).trace().real(), 1.0, 1e-10);
  EXPECT_NEAR((rho * pauli_matrix(P("ZZ"))).trace().real(), 1.0, 1e-10);
  EXPECT_NEAR((rho * pauli_matrix(P("YY"))).trace().real(), -1.0, 1e-10);
  const auto tab = resource_tomography(build_cluster_tableau(p.graph), p);
  EXPECT_LT((rho - tab).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Tomography, FullyDepolarizedInputGivesMaximallyMixedResource) {
  const GatePlan p = identity_plan(chain(6), 1, 1);
  const auto rho = resource_tomography(BranchEnsemble::maximally_mixed(6), p);
  EXPECT_LT((rho - Eigen::MatrixXcd::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(gate_fidelity(rho, p), 0.25, 1e-12);
}

TEST(Tomography, MatchesPartialTraceOfCorrectedEnsemble) {
  const GatePlan p = hadamard_plan();
  const auto e = noisy_cluster(p.graph, Perturbation::Model::LocalZRotation, 0.2);
  const auto rho = resource_tomography(e, p);
  const auto reg = p.resource_register();
  const auto direct = reduced_two_qubit_density(corrected_branch_ensemble(e, p), reg[0], reg[1]);
  EXPECT_LT((rho - direct).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(IdealState, StabilizedByTheIdealMap) {
  for (const GatePlan& p : {identity_plan(chain(6), 1, 1), hadamard_plan(), zrot_plan(0.6), csign_plan()}) {
    const Eigen::VectorXcd psi = ideal_resource_state(p);
    for (const auto& s : p.ideal_stabilizers()) {
      EXPECT_NEAR((psi.adjoint() * to_matrix(s) * psi)(0, 0).real(), 1.0, 1e-12) << p.label;
    }
  }
  const Eigen::VectorXcd a = ideal_resource_state(zrot_plan(0.0));
  const Eigen::VectorXcd b = ideal_resource_state(identity_plan(chain(6), 1, 1));
  EXPECT_NEAR(std::abs(a.dot(b)), 1.0, 1e-12);
}

TEST(Fidelity, ClusterInputIsPerfect) {
  for (const GatePlan& p : all_plans()) {
    EXPECT_NEAR(gate_fidelity(resource_tomography(build_cluster_dense(p.graph), p), p), 1.0, 1e-10) << p.label;
  }
}

TEST(Fidelity, DecaysMonotonicallyUnderLocalZNoise) {
  const GatePlan p = identity_plan(chain(6), 1, 1);
  const StateVector c = build_cluster_dense(p.graph);
  double last_f = 2.0, last_xx = 2.0;
  for (int k = 0; k <= 16; ++k) {
    const double beta = k * (std::numbers::pi / 4) / 16;
    const auto e = perturb(c, {Perturbation::Model::LocalZRotation, beta, 0, {}});
    const double f = gate_fidelity(resource_tomography(e, p), p);
    const double xx = post_measurement_expectation(e, p, P("X"), P("X"));
    if (k == 0) EXPECT_NEAR(f, 1.0, 1e-10);
    EXPECT_LE(f, last_f + 1e-12);
    EXPECT_LE(xx, last_xx + 1e-12);
    last_f = f;
    last_xx = xx;
  }
  EXPECT_LT(last_f, 0.99);
}

}  // namespace
}  // namespace mbqc
