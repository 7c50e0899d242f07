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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "mbqc/correlator.hpp"
#include "mbqc/csign.hpp"
#include "mbqc/gate_plan.hpp"
#include "mbqc/lattice.hpp"

namespace {

using namespace mbqc;

PauliString random_pauli(std::size_t n, std::mt19937_64& rng) {
  static constexpr char kLetters[] = "IXYZ";
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += kLetters[rng() % 4];
  return PauliString::from_str(s);
}

void BM_PauliMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  PauliString a = random_pauli(n, rng);
  const PauliString b = random_pauli(n, rng);
  for (auto _ : state) {
    a *= b;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_PauliMultiply)->Arg(8)->Arg(64)->Arg(512);

// Measures every qubit of a chain cluster in X.
void BM_TableauMeasureChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tableau cluster = build_cluster_tableau(chain(n));
  std::mt19937_64 rng(2);
  for (auto _ : state) {
    Tableau t = cluster;
    for (std::size_t q = 0; q < n; ++q) {
      PauliString x(n);
      x.set(q, 'X');
      benchmark::DoNotOptimize(t.measure(x, rng));
    }
  }
}
BENCHMARK(BM_TableauMeasureChain)->Arg(16)->Arg(64)->Arg(256);

void BM_DenseMeasureBranches(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StateVector cluster = build_cluster_dense(chain(n));
  const SingleQubitObservable obs{MeasurementBasis::XEta, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(measure_branches(cluster, obs, n / 2));
}
BENCHMARK(BM_DenseMeasureBranches)->Arg(8)->Arg(12)->Arg(16);

void BM_PostMeasurementHadamard(benchmark::State& state) {
  const GatePlan plan = hadamard_plan();
  const StateVector cluster = build_cluster_dense(plan.graph);
  const auto a = PauliString::from_str("X"), b = PauliString::from_str("Z");
  for (auto _ : state) benchmark::DoNotOptimize(post_measurement_expectation(cluster, plan, a, b));
}
BENCHMARK(BM_PostMeasurementHadamard);

void BM_PostMeasurementCsign(benchmark::State& state) {
  const GatePlan plan = csign_plan();
  const StateVector cluster = build_cluster_dense(plan.graph);
  const auto a = PauliString::from_str("XI"), b = PauliString::from_str("XZ");
  for (auto _ : state) benchmark::DoNotOptimize(post_measurement_expectation(cluster, plan, a, b));
}
BENCHMARK(BM_PostMeasurementCsign)->Unit(benchmark::kMillisecond);

void BM_DerivePreMeasurement(benchmark::State& state) {
  const GatePlan plan = zrot_plan(0.7);
  const auto a = PauliString::from_str("X"), b = PauliString::from_str("X");
  for (auto _ : state) benchmark::DoNotOptimize(derive_pre_measurement_expression(plan, a, b));
}
BENCHMARK(BM_DerivePreMeasurement);

void BM_CsignPinnedValidation(benchmark::State& state) {
  const CsignGeometry geo = shipped_csign_geometry();
  for (auto _ : state) benchmark::DoNotOptimize(validate_csign_geometry(geo.graph, geo.labeling));
}
BENCHMARK(BM_CsignPinnedValidation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
