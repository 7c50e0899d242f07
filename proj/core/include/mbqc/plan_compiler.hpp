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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mbqc/gate_plan.hpp"
#include "mbqc/lattice.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

/// A generator of the post-measurement resource stabilizer group: the
/// cluster sites whose K product yields it, that product's factors on
/// measured qubits, and its part on the resource register (phase = sign of
/// the product when every outcome is +1).
struct ResourceGenerator {
  std::vector<std::size_t> sites;
  std::vector<std::size_t> measured_factors;
  PauliString resource_part;
  PauliString full_product;
};

/// Finds K products compatible with the measurement bases (XEta counted as
/// X) and returns generators spanning the resource group.  Throws
/// UnsupportedError unless the group has one generator per resource qubit.
std::vector<ResourceGenerator> resource_generators(const Graph& g, std::span<const std::size_t> inputs,
                                                   std::span<const std::size_t> outputs,
                                                   std::span<const MeasurementStep> steps);

/// Pauli corrections that restore every generator's all-outcomes-+1 sign.
std::vector<Correction> derive_corrections(const Graph& g, std::span<const std::size_t> inputs,
                                           std::span<const std::size_t> outputs,
                                           std::span<const MeasurementStep> steps);

/// Sign (+1/-1) with which p lies in the group generated by the resource
/// parts, or 0 when it does not.
int resource_group_sign(std::span<const ResourceGenerator> generators, const PauliString& p);

}  // namespace mbqc
