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
#include <random>

#include "mbqc/density.hpp"
#include "mbqc/error.hpp"
#include "mbqc/lattice.hpp"
#include "mbqc/state_vector.hpp"
#include "support/oracle.hpp"

namespace mbqc {
namespace {

using testing::Cd;

PauliString P(std::string_view s) { return PauliString::from_str(s); }

StateVector random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  auto s = StateVector::from_amplitudes(a);
  s.normalize();
  return s;
}

double max_deviation(const StateVector& a, const StateVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(Dense, UzZeroIsIdentity) {
  const auto s = random_state(3, 1);
  auto t = s;
  t.apply_uz(1, 0.0);
  EXPECT_LT(max_deviation(s, t), 1e-15);
}

TEST(Dense, HadamardIsAnInvolution) {
  const auto s = random_state(4, 2);
  auto t = s;
  t.apply_h(2);
  t.apply_h(2);
  EXPECT_LT(max_deviation(s, t), 1e-12);
}

TEST(Dense, UzHalfPiIsSUpToPhase) {
  const auto s = random_state(3, 3);
  auto a = s;
  auto b = s;
  a.apply_uz(0, std::numbers::pi / 2);
  b.apply_s(0);
  EXPECT_NEAR(std::abs(a.inner(b)), 1.0, 1e-12);
}

TEST(Dense, ApplyMatrixRejectsNonUnitary) {
  StateVector s(1);
  EXPECT_THROW(s.apply_matrix(0, {1.0, 1.0, 0.0, 1.0}), NumericalError);
  EXPECT_THROW(s.apply_h(3), DimensionError);
}

TEST(Dense, QubitCapRaisesResourceLimit) { EXPECT_THROW(StateVector(30), ResourceLimitError); }

TEST(Dense, ZMeasurementOfZeroState) {
  const auto br = measure_branches(StateVector(1), {MeasurementBasis::Z, 0.0}, 0);
  EXPECT_EQ(br[0].outcome, 1);
  EXPECT_NEAR(br[0].probability, 1.0, 1e-15);
  EXPECT_EQ(br[1].outcome, -1);
  EXPECT_NEAR(br[1].probability, 0.0, 1e-15);
  EXPECT_TRUE(br[1].negligible);
}

TEST(Dense, XMeasurementOnClusterIsUnbiased) {
  const StateVector c = build_cluster_dense(chain(5));
  for (std::size_t q = 0; q < 5; ++q) {
    const auto br = measure_branches(c, {MeasurementBasis::X, 0.0}, q);
    EXPECT_NEAR(br[0].probability, 0.5, 1e-12);
    EXPECT_NEAR(br[1].probability, 0.5, 1e-12);
  }
}

TEST(Dense, XEtaAtZeroMatchesX) {
  const StateVector c = build_cluster_dense(chain(4));
  const auto a = measure_branches(c, {MeasurementBasis::X, 0.0}, 2);
  const auto b = measure_branches(c, {MeasurementBasis::XEta, 0.0}, 2);
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(a[k].probability, b[k].probability);
    EXPECT_EQ(max_deviation(a[k].state, b[k].state), 0.0);
  }
}

TEST(Dense, XEtaObservableIsRotatedX) {
  const double eta = 0.37;
  const auto m = SingleQubitObservable{MeasurementBasis::XEta, eta}.matrix();
  EXPECT_NEAR(std::abs(m[1] - Cd(std::cos(eta), -std::sin(eta))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m[2] - Cd(std::cos(eta), std::sin(eta))), 0.0, 1e-15);
}

TEST(Dense, ClusterMatchesClosedFormAmplitudes) {
  for (const Graph& g : {chain(6), square(3, 3)}) {
    const StateVector s = build_cluster_dense(g);
    const auto expect = testing::cluster_amplitudes(g);
    for (std::size_t i = 0; i < s.dimension(); ++i) EXPECT_NEAR(std::abs(s[i] - expect[i]), 0.0, 1e-12);
  }
}

TEST(Dense, ClusterExpectations) {
  const Graph g = chain(5);
  const StateVector s = build_cluster_dense(g);
  for (std::size_t a = 0; a < 5; ++a) {
    EXPECT_NEAR(expectation(s, OperatorExpression::from_pauli(cluster_stabilizer(g, a))), 1.0, 1e-12);
  }
  EXPECT_NEAR(expectation(s, OperatorExpression::from_pauli(P("ZYZII"))), 0.0, 1e-12);
  EXPECT_NEAR(expectation(s, OperatorExpression::identity(5)), 1.0, 1e-15);
}

TEST(Dense, ExpectationMatchesKroneckerOracle) {
  std::mt19937_64 rng(4);
  const auto s = random_state(4, 9);
  for (int t = 0; t < 60; ++t) {
    const auto p = testing::random_pauli(4, rng, true);
    EXPECT_NEAR(expectation(s, p), testing::oracle_expectation(s, p), 1e-12) << p.str();
  }
}

TEST(Dense, EnsembleValidation) {
  BranchEnsemble e;
  e.add(0.3, StateVector(2));
  EXPECT_THROW(e.validate(), NumericalError);
  e.add(0.7, StateVector::basis_state(2, 3));
  e.validate();
  EXPECT_NEAR(expectation(e, OperatorExpression::from_pauli(P("ZZ"))), 1.0, 1e-15);
  EXPECT_NEAR(expectation(e, OperatorExpression::from_pauli(P("ZI"))), 0.3 - 0.7, 1e-15);
}

TEST(Density, ProductStateIsDiagonal) {
  const auto rho = reduced_two_qubit_density(BranchEnsemble(StateVector(4)), 1, 3);
  Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
  expect(0, 0) = 1;
  EXPECT_TRUE(rho.isApprox(expect, 1e-15));
}

TEST(Density, MatchesPauliReconstruction) {
  const Graph g = chain(6);
  Perturbation noise{Perturbation::Model::LocalZRotation, 0.3, 0, {}};
  const BranchEnsemble e = perturb(build_cluster_dense(g), noise);
  const std::size_t a = 1, b = 4;
  const DensityMatrix rho = reduced_two_qubit_density(e, a, b);
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(4, 4);
  for (char x : std::string("IXYZ")) {
    for (char y : std::string("IXYZ")) {
      PauliString full(6);
      full.set(a, x);
      full.set(b, y);
      const double v = expectation(e, OperatorExpression::from_pauli(full));
      rebuilt += v * testing::kron_letters(std::string{x, y}) / 4.0;
    }
  }
  EXPECT_LT((rho - rebuilt).cwiseAbs().maxCoeff(), 1e-10);
  check_density(rho, 1e-12, 1e-12);
}

TEST(Density, PauliMatrixMatchesOracle) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    const auto p = testing::random_pauli(3, rng, true);
    EXPECT_TRUE(pauli_matrix(p).isApprox(testing::oracle_matrix(p), 1e-15)) << p.str();
  }
  const Eigen::MatrixXcd m = 0.5 * testing::kron_letters("XZ") - 0.25 * testing::kron_letters("YY");
  EXPECT_LT(pauli_decompose(m).max_abs_difference(0.5 * OperatorExpression::from_pauli(P("XZ")) -
                                                   0.25 * OperatorExpression::from_pauli(P("YY"))),
            1e-15);
}

TEST(Density, InspectFlagsNonPhysicalMatrices) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_THROW(check_density(m, 1e-9, 1e-9), NumericalError);  // trace 2
  m << 1.2, 0, 0, -0.2;
  EXPECT_THROW(check_density(m, 1e-9, 1e-9), NumericalError);  // negative eigenvalue
  m << 0.5, 0.5, 0.5, 0.5;
  EXPECT_NO_THROW(check_density(m, 1e-9, 1e-9));
  EXPECT_NEAR(trace_distance(m, Eigen::MatrixXcd::Identity(2, 2) / 2.0), 0.5, 1e-12);
}

TEST(Perturb, ZeroStrengthLeavesStateUnchanged) {
  const StateVector c = build_cluster_dense(chain(4));
  for (auto model : {Perturbation::Model::LocalZRotation, Perturbation::Model::LocalXRotation,
                     Perturbation::Model::RandomLocalRotation, Perturbation::Model::Depolarizing}) {
    const BranchEnsemble e = perturb(c, {model, 0.0, 17, {}});
    ASSERT_EQ(e.size(), 1u);
    EXPECT_LT(max_deviation(e.members().front().state, c), 1e-15);
  }
}

TEST(Perturb, FullDepolarizingMixesTheQubit) {
  const StateVector c = build_cluster_dense(chain(3));
  const BranchEnsemble e = perturb(c, {Perturbation::Model::Depolarizing, 1.0, 0, {1}});
  e.validate();
  const std::size_t q[] = {1};
  const DensityMatrix rho = reduced_density(e, q);
  EXPECT_LT(trace_distance(rho, Eigen::MatrixXcd::Identity(2, 2) / 2.0), 1e-10);
}

TEST(Perturb, RejectsBadParameters) {
  const StateVector c = build_cluster_dense(chain(3));
  EXPECT_THROW(perturb(c, {Perturbation::Model::Depolarizing, 1.5, 0, {}}), ParseError);
  EXPECT_THROW(perturb(c, {Perturbation::Model::LocalZRotation, 0.1, 0, {7}}), DimensionError);
  EXPECT_THROW(perturb(build_cluster_dense(chain(10)), {Perturbation::Model::Depolarizing, 0.1, 0, {}}, 1000),
               ResourceLimitError);
}

TEST(Perturb, RandomRotationIsSeeded) {
  const StateVector c = build_cluster_dense(chain(4));
  const Perturbation p{Perturbation::Model::RandomLocalRotation, 0.4, 99, {}};
  const auto a = perturb(c, p);
  const auto b = perturb(c, p);
  EXPECT_EQ(max_deviation(a.members()[0].state, b.members()[0].state), 0.0);
  auto q = p;
  q.seed = 100;
  EXPECT_GT(max_deviation(a.members()[0].state, perturb(c, q).members()[0].state), 1e-3);
}

}  // namespace
}  // namespace mbqc
