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

#include "mbqc/csign.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mbqc/error.hpp"
#include "mbqc/plan_compiler.hpp"

namespace mbqc {
namespace {

// Role indices used by both the validator and the search.
enum Role : std::size_t { kAIn, kBIn, kAOut, kBOut, kQ1, kQ2, kQ3, kQ4, kNumRoles };

constexpr std::array<const char*, kNumRoles> kRoleNames{"a_in", "b_in", "a_out", "b_out", "q1", "q2", "q3", "q4"};

struct Identity {
  std::string name;
  std::vector<Role> sites;
  std::map<Role, char> target;  // letters on resource roles; absent means I
};

std::vector<Identity> identities(CsignVariant v) {
  const Role z_side = v == CsignVariant::Printed ? kAIn : kAOut;
  return {
      {"K_a_in K_3 K_a_out", {kAIn, kQ3, kAOut}, {{kAIn, 'X'}, {kAOut, 'X'}, {kBOut, 'Z'}}},
      {"K_b_in K_4 K_b_out", {kBIn, kQ4, kBOut}, {{z_side, 'Z'}, {kBIn, 'X'}, {kBOut, 'X'}}},
      {"K_1 K_4", {kQ1, kQ4}, {{kAIn, 'Z'}, {kAOut, 'Z'}}},
      {"K_2 K_3", {kQ2, kQ3}, {{kBIn, 'Z'}, {kBOut, 'Z'}}},
  };
}

std::array<std::size_t, kNumRoles> role_vertices(const CsignLabeling& l) {
  return {l.a_in, l.b_in, l.a_out, l.b_out, l.measured[0], l.measured[1], l.measured[2], l.measured[3]};
}

struct Check {
  bool pass = true;
  std::string reason;
  std::vector<std::string> transcript;
};

Check check_variant(const Graph& g, const CsignLabeling& l, CsignVariant variant) {
  const auto verts = role_vertices(l);
  std::vector<int> role_of(g.num_vertices(), -1);  // role index, or kNumRoles for boundary
  for (std::size_t r = 0; r < kNumRoles; ++r) role_of[verts[r]] = static_cast<int>(r);
  for (std::size_t b : l.boundary) role_of[b] = kNumRoles;

  auto vertex_name = [&](std::size_t v) {
    return role_of[v] < static_cast<int>(kNumRoles) ? std::string(kRoleNames[role_of[v]]) : "z" + std::to_string(v);
  };

  Check out;
  for (const auto& id : identities(variant)) {
    PauliString p(g.num_vertices());
    for (Role r : id.sites) p *= cluster_stabilizer(g, verts[r]);
    std::ostringstream line;
    line << id.name << " = " << (p.phase() == Phase::plus_one() ? "+" : p.phase() == Phase::minus_one() ? "-" : "?");
    for (std::size_t v : p.support()) line << ' ' << p.at(v) << '[' << vertex_name(v) << ']';
    out.transcript.push_back(line.str());
    if (!out.pass) continue;

    std::string problem;
    for (std::size_t v = 0; v < g.num_vertices() && problem.empty(); ++v) {
      const char letter = p.at(v);
      const int role = role_of[v];
      if (role == static_cast<int>(kNumRoles)) {
        if (letter != 'I' && letter != 'Z') problem = std::string(1, letter) + " on boundary site " + vertex_name(v);
      } else if (role >= static_cast<int>(kQ1)) {
        if (letter != 'I' && letter != 'X') problem = std::string(1, letter) + " on measured qubit " + vertex_name(v);
      } else {
        const auto it = id.target.find(static_cast<Role>(role));
        const char want = it == id.target.end() ? 'I' : it->second;
        if (letter != want) {
          problem = std::string(1, letter) + " on " + vertex_name(v) + " where the target has " + std::string(1, want);
        }
      }
    }
    if (problem.empty() && p.phase() != Phase::plus_one()) problem = "product carries a phase other than +1";
    if (!problem.empty()) {
      out.pass = false;
      out.reason = id.name + ": " + problem;
    }
  }
  return out;
}

}  // namespace

std::string_view name_of(CsignVariant v) { return v == CsignVariant::Printed ? "printed" : "output-side"; }

CsignValidation validate_csign_geometry(const Graph& g, const CsignLabeling& l) {
  CsignValidation out;
  const std::size_t n = g.num_vertices();
  std::vector<int> seen(n, 0);
  const auto roles = role_vertices(l);
  std::vector<std::size_t> all(roles.begin(), roles.end());
  all.insert(all.end(), l.boundary.begin(), l.boundary.end());
  for (std::size_t v : all) {
    if (v >= n) {
      out.reason = "labelled vertex " + std::to_string(v) + " is not in the graph";
      return out;
    }
    if (seen[v]++) {
      out.reason = "vertex " + std::to_string(v) + " carries two roles";
      return out;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) {
      out.reason = "vertex " + std::to_string(v) + " has no role";
      return out;
    }
  }

  Check printed = check_variant(g, l, CsignVariant::Printed);
  if (printed.pass) {
    out.pass = true;
    out.variant = CsignVariant::Printed;
    out.transcript = std::move(printed.transcript);
    return out;
  }
  Check side = check_variant(g, l, CsignVariant::OutputSide);
  if (side.pass) {
    out.pass = true;
    out.variant = CsignVariant::OutputSide;
    out.transcript = std::move(side.transcript);
    return out;
  }
  out.reason = printed.reason;
  out.transcript = std::move(printed.transcript);
  return out;
}

CsignSearchResult search_csign_geometry(const CsignSearchOptions& options) {
  CsignSearchResult result;
  if (options.window < 1) throw DimensionError("search window must be positive");
  std::vector<Coord> cells;
  for (int r = 0; r < options.window; ++r) {
    for (int c = 0; c < options.window; ++c) cells.push_back({r, c});
  }
  // Roles whose identities close early go first, so pruning bites sooner.
  const std::array<Role, kNumRoles> order{kQ1, kQ4, kQ3, kAIn, kAOut, kQ2, kBIn, kBOut};

  auto adjacent = [](Coord a, Coord b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1; };

  for (CsignVariant variant : {CsignVariant::Printed, CsignVariant::OutputSide}) {
    const auto ids = identities(variant);
    std::array<std::optional<Coord>, kNumRoles> at{};
    std::vector<std::uint8_t> used(cells.size(), 0);

    // Letters on already placed roles are final once an identity's K-set is placed.
    auto consistent = [&]() {
      for (const auto& id : ids) {
        if (!std::all_of(id.sites.begin(), id.sites.end(), [&](Role r) { return at[r].has_value(); })) continue;
        for (std::size_t v = 0; v < kNumRoles; ++v) {
          if (!at[v]) continue;
          const bool x = std::find(id.sites.begin(), id.sites.end(), static_cast<Role>(v)) != id.sites.end();
          bool z = false;
          for (Role s : id.sites) z ^= adjacent(*at[s], *at[v]);
          if (v >= kQ1) {
            if (z) return false;
            continue;
          }
          const auto it = id.target.find(static_cast<Role>(v));
          const char want = it == id.target.end() ? 'I' : it->second;
          const char got = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
          if (got != want) return false;
        }
      }
      return true;
    };

    std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
      result.deepest_placement = std::max(result.deepest_placement, depth);
      if (depth == kNumRoles) {
        std::vector<Coord> sites;
        for (std::size_t r = 0; r < kNumRoles; ++r) sites.push_back(*at[r]);
        std::set<Coord> occupied(sites.begin(), sites.end());
        std::set<Coord> boundary;
        for (std::size_t r = kQ1; r < kNumRoles; ++r) {
          const Coord c = *at[r];
          for (Coord d : {Coord{c.row - 1, c.col}, Coord{c.row + 1, c.col}, Coord{c.row, c.col - 1}, Coord{c.row, c.col + 1}}) {
            if (!occupied.count(d)) boundary.insert(d);
          }
        }
        if (kNumRoles + boundary.size() > options.max_vertices) return false;
        sites.insert(sites.end(), boundary.begin(), boundary.end());
        CsignGeometry geo{lattice_region(sites), {}};
        geo.labeling = {kAIn, kBIn, kAOut, kBOut, {kQ1, kQ2, kQ3, kQ4}, {}};
        for (std::size_t b = kNumRoles; b < sites.size(); ++b) geo.labeling.boundary.push_back(b);
        ++result.candidates_checked;
        CsignValidation v = validate_csign_geometry(geo.graph, geo.labeling);
        if (v.pass && v.variant == variant) {
          result.geometry = std::move(geo);
          result.validation = std::move(v);
          return true;
        }
        return false;
      }
      const Role role = order[depth];
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        at[role] = cells[i];
        if (consistent() && place(depth + 1)) return true;
        at[role].reset();
        used[i] = 0;
      }
      return false;
    };

    if (options.max_vertices >= kNumRoles && place(0)) return result;
  }
  result.exhausted = true;
  result.validation.reason = "no geometry within " + std::to_string(options.max_vertices) + " vertices on a " +
                             std::to_string(options.window) + "x" + std::to_string(options.window) +
                             " window; closest miss placed " + std::to_string(result.deepest_placement) + " of " +
                             std::to_string(kNumRoles) + " roles consistently";
  return result;
}

CsignGeometry shipped_csign_geometry() {
  // First hit of search_csign_geometry() with default options: a 2x4
  // strip with the inputs and outputs at the corners, a_in touching b_out.
  const std::vector<Coord> sites{
      {0, 0}, {0, 3}, {1, 3}, {1, 0},    // a_in, b_in, a_out, b_out
      {0, 1}, {1, 1}, {0, 2}, {1, 2},    // q1 .. q4
      {-1, 1}, {-1, 2}, {2, 1}, {2, 2},  // boundary
  };
  return {lattice_region(sites), {0, 1, 2, 3, {4, 5, 6, 7}, {8, 9, 10, 11}}};
}

GatePlan csign_plan() { return csign_plan(shipped_csign_geometry()); }

GatePlan csign_plan(const CsignGeometry& geo) {
  const CsignValidation v = validate_csign_geometry(geo.graph, geo.labeling);
  if (!v.pass) throw UnsupportedError("no stored CSIGN geometry passes validation: " + v.reason);
  const auto& l = geo.labeling;
  GatePlan p;
  p.label = "csign";
  p.graph = geo.graph;
  p.inputs = {l.a_in, l.b_in};
  p.outputs = {l.a_out, l.b_out};
  for (std::size_t q : l.measured) p.steps.push_back({q, MeasurementBasis::X, 0.0, {}});
  for (std::size_t q : l.boundary) p.steps.push_back({q, MeasurementBasis::Z, 0.0, {}});
  p.corrections = derive_corrections(p.graph, p.inputs, p.outputs, p.steps);
  auto op = [](std::string_view s) { return OperatorExpression::from_pauli(PauliString::from_str(s)); };
  p.ideal.x_images = {op("XZ"), op("ZX")};
  p.ideal.z_images = {op("ZI"), op("IZ")};
  p.targets = {{"X_a_in X_a_out Z_b_out", op("XIXZ"), 1.0},
               {"Z_a_in X_b_in X_b_out", op("ZXIX"), 1.0},
               {"Z_a_in Z_a_out", op("ZIZI"), 1.0},
               {"Z_b_in Z_b_out", op("IZIZ"), 1.0}};
  p.validate();
  return p;
}

}  // namespace mbqc
