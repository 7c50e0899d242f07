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

#include <random>

#include "mbqc/error.hpp"
#include "mbqc/lattice.hpp"
#include "mbqc/tableau.hpp"
#include "support/oracle.hpp"

namespace mbqc {
namespace {

PauliString P(std::string_view s) { return PauliString::from_str(s); }

TEST(Tableau, HadamardTurnsZIntoX) {
  Tableau t(1);
  t.apply(CliffordGate::h(0));
  EXPECT_EQ(t.stabilizers().front(), P("X"));
}

TEST(Tableau, TwoQubitClusterGenerators) {
  Tableau t(2);
  t.apply(CliffordGate::h(0));
  t.apply(CliffordGate::h(1));
  t.apply(CliffordGate::cz(0, 1));
  EXPECT_EQ(t.expectation(P("XZ")), 1);
  EXPECT_EQ(t.expectation(P("ZX")), 1);
  t.validate();
}

TEST(Tableau, MeasureEigenstateIsDeterministic) {
  const auto r = measure_pauli(Tableau(1), P("Z"), 1);
  EXPECT_EQ(r.outcome, 1);
  EXPECT_TRUE(r.deterministic);
  EXPECT_EQ(r.posterior, Tableau(1));
  EXPECT_THROW(measure_pauli(Tableau(1), P("Z"), -1), ContradictionError);
}

TEST(Tableau, ForcedRandomOutcomeFlipsSign) {
  const auto r = measure_pauli(Tableau(1), P("X"), -1);
  EXPECT_FALSE(r.deterministic);
  EXPECT_EQ(r.outcome, -1);
  EXPECT_EQ(expectation_pauli(r.posterior, P("X")), -1);
}

TEST(Tableau, ClusterStabilizerIsDeterministicPlusOne) {
  const Tableau t = build_cluster_tableau(chain(5));
  const auto r = measure_pauli(t, P("IZXZI"), 1);
  EXPECT_TRUE(r.deterministic);
  EXPECT_EQ(r.outcome, 1);
}

TEST(Tableau, ClusterExpectations) {
  const Tableau t = build_cluster_tableau(chain(5));
  for (std::size_t a = 0; a < 5; ++a) EXPECT_EQ(t.expectation(cluster_stabilizer(chain(5), a)), 1);
  EXPECT_EQ(t.expectation(P("ZYZII")), 0);
  EXPECT_EQ(Tableau(1).expectation(P("X")), 0);
  EXPECT_EQ(t.expectation(P("-IZXZI")), -1);
}

TEST(Tableau, RandomCircuitMatchesDense) {
  std::mt19937_64 rng(8);
  Tableau t(8);
  StateVector s(8);
  for (int step = 0; step < 60; ++step) {
    const std::size_t a = rng() % 8;
    std::size_t b = rng() % 7;
    b += b >= a ? 1 : 0;
    switch (rng() % 4) {
      case 0: t.apply(CliffordGate::h(a)); s.apply_h(a); break;
      case 1: t.apply(CliffordGate::s(a)); s.apply_s(a); break;
      case 2: t.apply(CliffordGate::cz(a, b)); s.apply_cz(a, b); break;
      default: t.apply(CliffordGate::cx(a, b)); s.apply_cx(a, b); break;
    }
  }
  t.validate();
  for (const auto& g : t.stabilizers()) EXPECT_NEAR(testing::oracle_expectation(s, g), 1.0, 1e-12) << g.str();
  for (int k = 0; k < 50; ++k) {
    const auto p = testing::random_pauli(8, rng, true);
    EXPECT_NEAR(static_cast<double>(t.expectation(p)), testing::oracle_expectation(s, p), 1e-12) << p.str();
  }
}

TEST(Tableau, InvariantsHoldAfterMeasurements) {
  std::mt19937_64 rng(3);
  Tableau t = build_cluster_tableau(square(3, 3));
  for (std::size_t q = 0; q < 9; ++q) {
    PauliString obs(9);
    obs.set(q, "XYZ"[rng() % 3]);
    t.measure(obs, rng);
    t.validate();
  }
  const auto& st = t.stabilizers();
  for (std::size_t i = 0; i < st.size(); ++i) {
    for (std::size_t j = 0; j < st.size(); ++j) {
      EXPECT_TRUE(st[i].commutes(st[j]));
      EXPECT_EQ(t.destabilizers()[i].commutes(st[j]), i != j);
    }
  }
}

TEST(Tableau, TextRoundTrip) {
  const Tableau t = build_cluster_tableau(chain(4));
  EXPECT_EQ(Tableau::from_text(t.to_text()), t);
  EXPECT_THROW(Tableau::from_text("+XZ\n"), ParseError);
}

TEST(Tableau, RejectsMismatchedObservables) {
  Tableau t(2);
  EXPECT_THROW(t.expectation(P("XXX")), DimensionError);
  EXPECT_THROW(t.measure(P("iXX"), 1), UnsupportedError);
}

}  // namespace
}  // namespace mbqc
