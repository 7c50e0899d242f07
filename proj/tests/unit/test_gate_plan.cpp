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
#include "mbqc/error.hpp"
#include "mbqc/gate_plan.hpp"
#include "mbqc/plan_compiler.hpp"

namespace mbqc {
namespace {

PauliString P(std::string_view s) { return PauliString::from_str(s); }

OutcomeRecord outcomes(const GatePlan& plan, std::initializer_list<std::size_t> flipped) {
  OutcomeRecord j;
  for (const auto& s : plan.steps) {
    const bool minus = std::find(flipped.begin(), flipped.end(), s.qubit) != flipped.end();
    j.record(s.qubit, minus ? -1 : 1);
  }
  return j;
}

std::vector<std::pair<std::size_t, char>> step_list(const GatePlan& p) {
  std::vector<std::pair<std::size_t, char>> out;
  for (const auto& s : p.steps) out.emplace_back(s.qubit, name_of(s.basis)[0]);
  return out;
}

TEST(OutcomeRecord, RecordsAndRejects) {
  OutcomeRecord j;
  j.record(3, -1);
  EXPECT_EQ(j.at(3), -1);
  EXPECT_TRUE(j.contains(3));
  EXPECT_THROW(j.record(3, 1), DimensionError);
  EXPECT_THROW(j.record(4, 0), DimensionError);
  EXPECT_THROW(j.at(5), DimensionError);
}

TEST(ParityFormula, EvaluatesAndCombines) {
  OutcomeRecord j;
  j.record(0, -1);
  j.record(2, 1);
  j.record(4, -1);
  const auto a = ParityFormula::of({0, 2});
  const auto b = ParityFormula::of({2, 4});
  EXPECT_EQ(a.evaluate(j), 1);
  EXPECT_EQ(b.evaluate(j), 1);
  EXPECT_EQ((a ^ b), ParityFormula::of({0, 4}));
  EXPECT_EQ((a ^ b).evaluate(j), 0);
  EXPECT_EQ(ParityFormula::of({1, 1, 3}), ParityFormula::of({3}));
  EXPECT_EQ(ParityFormula::of({0, 4}).str(), "[1 - m0 m4]/2");
  EXPECT_EQ(ParityFormula{}.str(), "0");
  EXPECT_EQ(ParityFormula::of({}, -1).evaluate(j), 1);
}

TEST(IdentityPlan, ShortestInstanceMeasuresThreeQubits) {
  const GatePlan p = identity_plan(chain(6), 1, 1);
  EXPECT_EQ(p.inputs, std::vector<std::size_t>{1});
  EXPECT_EQ(p.outputs, std::vector<std::size_t>{3});
  EXPECT_EQ(step_list(p), (std::vector<std::pair<std::size_t, char>>{{0, 'Z'}, {2, 'X'}, {4, 'Z'}}));
  EXPECT_FALSE(p.adaptive());
}

TEST(IdentityPlan, ParitiesFollowTheGeneralFormula) {
  // Left/right Z outcomes m_l, m_r sit on k-1 and k+2l+1; X outcomes on k+1..k+2l-1.
  for (std::size_t l = 1; l <= 4; ++l) {
    const std::size_t k = 2;
    const GatePlan p = identity_plan(chain(k + 2 * l + 2), k, l);
    std::vector<std::size_t> z{k - 1, k + 2 * l + 1};
    std::vector<std::size_t> x;
    for (std::size_t j = 1; j <= l; ++j) x.push_back(k + 2 * j - 1);
    for (std::size_t j = 1; j + 1 <= l; ++j) z.push_back(k + 2 * j);
    ASSERT_EQ(p.corrections.size(), 1u);
    EXPECT_EQ(p.corrections[0].qubit, k + 2 * l);
    EXPECT_EQ(p.corrections[0].x_parity, ParityFormula::of(x)) << "l=" << l;
    EXPECT_EQ(p.corrections[0].z_parity, ParityFormula::of(z)) << "l=" << l;
  }
}

TEST(IdentityPlan, Corrections) {
  const GatePlan p2 = identity_plan(chain(8), 1, 2);
  EXPECT_EQ(correction_for(p2, outcomes(p2, {})), P("IIIIIIII"));
  EXPECT_EQ(correction_for(p2, outcomes(p2, {2})), P("IIIIIXII"));
  const GatePlan p1 = identity_plan(chain(6), 1, 1);
  EXPECT_EQ(correction_for(p1, outcomes(p1, {0})), P("IIIZII"));
}

TEST(IdentityPlan, RejectsShortChains) {
  EXPECT_THROW(identity_plan(chain(4), 1, 1), DimensionError);
  EXPECT_THROW(identity_plan(chain(8), 0, 2), DimensionError);
  EXPECT_THROW(identity_plan(square(3, 3), 1, 1), UnsupportedError);
}

TEST(SevenQubitPlans, PrintedParities) {
  const GatePlan h = hadamard_plan();
  EXPECT_EQ(h.corrections[0].x_parity, ParityFormula::of({0, 3, 4}));
  EXPECT_EQ(h.corrections[0].z_parity, ParityFormula::of({2, 3, 6}));
  const GatePlan s = pi2_plan();
  EXPECT_EQ(s.corrections[0].x_parity, ParityFormula::of({2, 4}));
  EXPECT_EQ(s.corrections[0].z_parity, ParityFormula::of({0, 2, 3, 6}));
  const GatePlan r = zrot_plan(0.7);
  EXPECT_EQ(r.corrections[0].x_parity, ParityFormula::of({2, 4}));
  EXPECT_EQ(r.corrections[0].z_parity, ParityFormula::of({0, 3, 6}));
  EXPECT_TRUE(r.adaptive());
  ASSERT_EQ(r.angles().size(), 1u);
  EXPECT_EQ(r.angle_symbol(3), 0u);
}

TEST(SevenQubitPlans, HadamardCorrections) {
  const GatePlan h = hadamard_plan();
  EXPECT_EQ(correction_for(h, outcomes(h, {})), P("IIIIIII"));
  // p_X = [1 - m0 m3 m4]/2 = 0 and p_Z = [1 - m2 m3 m6]/2 = 1.
  EXPECT_EQ(correction_for(h, outcomes(h, {0, 3})), P("IIIIIZI"));
}

TEST(SevenQubitPlans, Pi2Corrections) {
  const GatePlan s = pi2_plan();
  const auto c = correction_for(s, outcomes(s, {2}));
  EXPECT_EQ(c.at(5), 'Y');  // X Z on the output
  EXPECT_EQ(c.weight(), 1u);
}

TEST(ZrotPlan, ZeroAngleIsTheIdentityGate) {
  const GatePlan r = zrot_plan(0.0);
  const auto stabs = r.ideal_stabilizers();
  ASSERT_EQ(stabs.size(), 2u);
  EXPECT_LT(stabs[0].max_abs_difference(OperatorExpression::from_pauli(P("XX"))), 1e-15);
  EXPECT_LT(stabs[1].max_abs_difference(OperatorExpression::from_pauli(P("ZZ"))), 1e-15);
  const auto basis = r.steps[2].observable(outcomes(r, {2}));
  EXPECT_EQ(basis.basis, MeasurementBasis::XEta);
  EXPECT_EQ(basis.angle, 0.0);
}

TEST(ZrotPlan, AngleFollowsPriorOutcome) {
  const GatePlan r = zrot_plan(0.7);
  const auto& step = r.steps[2];
  ASSERT_EQ(step.qubit, 3u);
  OutcomeRecord j;
  j.record(0, 1);
  j.record(2, 1);
  EXPECT_DOUBLE_EQ(step.observable(j).angle, 0.7);
  OutcomeRecord k;
  k.record(0, 1);
  k.record(2, -1);
  EXPECT_DOUBLE_EQ(step.observable(k).angle, -0.7);
}

TEST(Diag2d, SmallestInstance) {
  const auto sites = diagonal_region_sites(3, false);
  const GatePlan p = diag_identity_plan_2d(lattice_region(sites), 3);
  std::size_t x = 0, z = 0;
  for (const auto& s : p.steps) (s.basis == MeasurementBasis::X ? x : z) += 1;
  EXPECT_EQ(x, 3u);
  EXPECT_EQ(z, 6u);
  EXPECT_EQ(correction_for(p, outcomes(p, {})).weight(), 0u);
  EXPECT_EQ(p.graph.coords()[p.inputs[0]], (Coord{1, 1}));
  EXPECT_EQ(p.graph.coords()[p.outputs[0]], (Coord{3, 3}));
}

TEST(Diag2d, RejectsGraphWithoutTheStaircase) {
  EXPECT_THROW(diag_identity_plan_2d(square(2, 2), 3), Error);
}

TEST(Concatenate, HadamardTwiceIsIdentity) {
  const GatePlan hh = concatenate(hadamard_plan(), hadamard_plan());
  EXPECT_EQ(hh.label, "hadamard.hadamard");
  const auto stabs = hh.ideal_stabilizers();
  EXPECT_LT(stabs[0].max_abs_difference(OperatorExpression::from_pauli(P("XX"))), 1e-12);
  EXPECT_LT(stabs[1].max_abs_difference(OperatorExpression::from_pauli(P("ZZ"))), 1e-12);
}

TEST(Concatenate, IdentityTwiceMatchesLongerIdentity) {
  const GatePlan a = identity_plan(chain(5), 1, 1);
  const GatePlan ii = concatenate(a, a);
  const GatePlan l2 = identity_plan(chain(7), 1, 2);
  ASSERT_EQ(ii.graph, l2.graph);
  const StateVector c = build_cluster_dense(l2.graph);
  const BranchEnsemble noisy = perturb(c, {Perturbation::Model::RandomLocalRotation, 0.4, 12, {}});
  for (const auto& p : resource_pauli_basis(2)) {
    const auto [x, y] = split_resource_pauli(l2, p);
    EXPECT_NEAR(post_measurement_expectation(c, ii, x, y), post_measurement_expectation(c, l2, x, y), 1e-10);
    EXPECT_NEAR(post_measurement_expectation(noisy, ii, x, y), post_measurement_expectation(noisy, l2, x, y), 1e-10);
  }
}

TEST(Concatenate, OrderingRules) {
  EXPECT_NO_THROW(concatenate(zrot_plan(0.3), hadamard_plan()));
  EXPECT_THROW(concatenate(hadamard_plan(), zrot_plan(0.3)), UnsupportedError);
  EXPECT_THROW(concatenate(zrot_plan(0.3), zrot_plan(0.3)), UnsupportedError);
  EXPECT_THROW(concatenate(identity_plan(chain(6), 1, 1), hadamard_plan()), UnsupportedError);
}

TEST(Validate, NamesTheBrokenInvariant) {
  GatePlan p = hadamard_plan();
  p.steps.push_back({5, MeasurementBasis::X, 0.0, {}});
  EXPECT_THROW(p.validate(), UnsupportedError);

  p = zrot_plan(0.5);
  p.steps[2].angle_dependencies = {4};  // measured later
  EXPECT_THROW(p.validate(), UnsupportedError);

  p = hadamard_plan();
  p.corrections[0].x_parity = ParityFormula::of({5});
  EXPECT_THROW(p.validate(), UnsupportedError);

  p = hadamard_plan();
  p.ideal.z_images[0] = OperatorExpression::from_pauli(P("Z"));  // XZ and ZZ anticommute
  try {
    p.validate();
    FAIL() << "validate accepted anticommuting ideal stabilizers";
  } catch (const UnsupportedError& e) {
    EXPECT_NE(std::string(e.what()).find("plan 'hadamard'"), std::string::npos);
  }
}

TEST(PlanCompiler, ReproducesPrintedCorrections) {
  for (const GatePlan& p : {identity_plan(chain(8), 1, 2), hadamard_plan(), pi2_plan(), zrot_plan(1.1)}) {
    EXPECT_EQ(derive_corrections(p.graph, p.inputs, p.outputs, p.steps), p.corrections) << p.label;
  }
}

TEST(PlanCompiler, GeneratorsSpanTheResource) {
  const GatePlan h = hadamard_plan();
  const auto gens = resource_generators(h.graph, h.inputs, h.outputs, h.steps);
  ASSERT_EQ(gens.size(), 2u);
  EXPECT_EQ(resource_group_sign(gens, P("XZ")), 1);
  EXPECT_EQ(resource_group_sign(gens, P("ZX")), 1);
  EXPECT_EQ(resource_group_sign(gens, P("YY")), 1);  // XZ * ZX = (-iY)(iY)
  EXPECT_EQ(resource_group_sign(gens, P("-YY")), -1);
  EXPECT_EQ(resource_group_sign(gens, P("XX")), 0);
}

TEST(PlanCompiler, RejectsUnderdeterminedPatterns) {
  // Leaving qubit 3 unmeasured in the middle of the chain breaks the resource.
  const GatePlan h = hadamard_plan();
  std::vector<MeasurementStep> steps;
  for (const auto& s : h.steps)
    if (s.qubit != 3) steps.push_back(s);
  EXPECT_THROW(derive_corrections(h.graph, h.inputs, h.outputs, steps), UnsupportedError);
}

}  // namespace
}  // namespace mbqc
