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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mbqc/gate_plan.hpp"
#include "mbqc/lattice.hpp"

namespace mbqc {

/// Role assignment for a CSIGN resource: the two input/output pairs, the
/// four X-measured qubits 1..4, and Z-measured boundary sites.  Every graph
/// vertex must carry exactly one role.
struct CsignLabeling {
  std::size_t a_in = 0;
  std::size_t b_in = 0;
  std::size_t a_out = 0;
  std::size_t b_out = 0;
  std::array<std::size_t, 4> measured{};
  std::vector<std::size_t> boundary;

  bool operator==(const CsignLabeling&) const = default;
};

/// Which form of the b-pair identity the geometry satisfies: the printed
/// Z_{a_in} X_{b_in} X_{b_out}, or the output-side Z_{a_out} X_{b_in} X_{b_out}
/// that the gate's Pauli map predicts.
enum class CsignVariant { Printed, OutputSide };

std::string_view name_of(CsignVariant v);

struct CsignValidation {
  bool pass = false;
  std::string reason;                    // first violated identity on failure
  std::optional<CsignVariant> variant;   // set on pass
  std::vector<std::string> transcript;   // one line per identity
};

/// Checks that K_{a_in}K_3K_{a_out}, K_{b_in}K_4K_{b_out}, K_1K_4 and K_2K_3
/// reduce exactly to the four target operators times X on qubits 1..4 and Z
/// on boundary sites.
CsignValidation validate_csign_geometry(const Graph& g, const CsignLabeling& labeling);

struct CsignGeometry {
  Graph graph;
  CsignLabeling labeling;
};

struct CsignSearchOptions {
  std::size_t max_vertices = 13;  // labelled roles plus boundary
  int window = 4;                 // roles are placed on a window x window patch
};

struct CsignSearchResult {
  std::optional<CsignGeometry> geometry;
  CsignValidation validation;
  std::size_t candidates_checked = 0;
  std::size_t deepest_placement = 0;  // most roles placed consistently, for miss diagnostics
  bool exhausted = false;
};

/// Places the eight roles on square-lattice sites (printed variant first,
/// then the output-side one), closes the measured qubits' remaining lattice
/// neighbours as Z boundary, and returns the first geometry that validates.
CsignSearchResult search_csign_geometry(const CsignSearchOptions& options = {});

/// The stored geometry used by csign_plan.
CsignGeometry shipped_csign_geometry();

/// CSIGN plan on the stored geometry.  Resource register order is
/// a_in, b_in, a_out, b_out.
GatePlan csign_plan();
GatePlan csign_plan(const CsignGeometry& geometry);

}  // namespace mbqc
