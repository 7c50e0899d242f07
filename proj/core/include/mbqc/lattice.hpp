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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mbqc/pauli.hpp"
#include "mbqc/state_vector.hpp"
#include "mbqc/tableau.hpp"

namespace mbqc {

/// Square-lattice coordinate (row, column).
struct Coord {
  int row = 0;
  int col = 0;
  auto operator<=>(const Coord&) const = default;
};

/// Simple undirected graph with an optional injective coordinate map.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  explicit Graph(std::size_t n);
  /// Throws DimensionError on self-loops, duplicate edges, out-of-range
  /// endpoints, or a non-injective / wrongly sized coordinate map.
  Graph(std::size_t n, std::vector<Edge> edges, std::optional<std::vector<Coord>> coords = std::nullopt);

  std::size_t num_vertices() const { return n_; }
  /// Sorted, each with first < second.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const;
  std::size_t degree(std::size_t v) const { return neighbors(v).size(); }
  bool adjacent(std::size_t u, std::size_t v) const;

  bool has_coords() const { return coords_.has_value(); }
  const std::vector<Coord>& coords() const;
  std::optional<std::size_t> vertex_at(Coord c) const;
  /// Throws DimensionError when no vertex sits at c.
  std::size_t vertex_at_or_throw(Coord c) const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::optional<std::vector<Coord>> coords_;
};

/// Path 0 - 1 - ... - (n-1).
Graph chain(std::size_t n);
/// width x height square lattice; vertex (row, col) has index row * width + col.
Graph square(std::size_t width, std::size_t height);
/// Induced subgraph of the infinite square lattice on the given sites, in order.
Graph lattice_region(std::span<const Coord> sites);

/// K_a = X_a prod_{b in nbhd(a)} Z_b.
PauliString cluster_stabilizer(const Graph& g, std::size_t a);
std::vector<PauliString> cluster_stabilizers(const Graph& g);

/// |+>^n followed by CZ on every edge.
Tableau build_cluster_tableau(const Graph& g);
StateVector build_cluster_dense(const Graph& g, std::size_t qubit_cap = kDefaultDenseQubitCap);

struct Perturbation {
  enum class Model {
    None,
    LocalZRotation,       // Uz(strength) on every listed qubit
    LocalXRotation,       // Ux(strength)
    RandomLocalRotation,  // rotation by strength about a seeded random axis per qubit
    Depolarizing,         // per-qubit depolarizing channel with probability strength
  };

  Model model = Model::None;
  double strength = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> qubits;  // empty means every qubit
};

/// Applies the perturbation; pure models return a single-member ensemble,
/// depolarizing expands into Pauli-kicked branches.  Throws ParseError for an
/// out-of-range strength and ResourceLimitError above max_members.
BranchEnsemble perturb(const StateVector& s, const Perturbation& model, std::size_t max_members = 1u << 16);

}  // namespace mbqc
