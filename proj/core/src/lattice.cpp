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

#include "mbqc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "mbqc/error.hpp"

namespace mbqc {

Graph::Graph(std::size_t n) : n_(n), adjacency_(n) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::optional<std::vector<Coord>> coords)
    : n_(n), adjacency_(n), coords_(std::move(coords)) {
  for (auto& e : edges) {
    if (e.first >= n || e.second >= n) throw DimensionError("edge endpoint out of range");
    if (e.first == e.second) throw DimensionError("self-loop on vertex " + std::to_string(e.first));
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw DimensionError("duplicate edge");
  }
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());
  if (coords_) {
    if (coords_->size() != n) throw DimensionError("coordinate map must cover every vertex");
    std::set<Coord> seen(coords_->begin(), coords_->end());
    if (seen.size() != n) throw DimensionError("coordinate map is not injective");
  }
}

const std::vector<std::size_t>& Graph::neighbors(std::size_t v) const {
  if (v >= n_) throw DimensionError("vertex " + std::to_string(v) + " out of range");
  return adjacency_[v];
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  const auto& a = neighbors(u);
  return std::binary_search(a.begin(), a.end(), v);
}

const std::vector<Coord>& Graph::coords() const {
  if (!coords_) throw DimensionError("graph has no coordinates");
  return *coords_;
}

std::optional<std::size_t> Graph::vertex_at(Coord c) const {
  if (!coords_) return std::nullopt;
  auto it = std::find(coords_->begin(), coords_->end(), c);
  if (it == coords_->end()) return std::nullopt;
  return static_cast<std::size_t>(it - coords_->begin());
}

std::size_t Graph::vertex_at_or_throw(Coord c) const {
  auto v = vertex_at(c);
  if (!v) {
    throw DimensionError("no vertex at (" + std::to_string(c.row) + "," + std::to_string(c.col) + ")");
  }
  return *v;
}

Graph chain(std::size_t n) {
  if (n == 0) throw DimensionError("chain needs at least one vertex");
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, std::move(edges));
}

Graph square(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw DimensionError("square lattice needs positive width and height");
  std::vector<Graph::Edge> edges;
  std::vector<Coord> coords;
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const std::size_t v = r * width + c;
      coords.push_back({static_cast<int>(r), static_cast<int>(c)});
      if (c + 1 < width) edges.emplace_back(v, v + 1);
      if (r + 1 < height) edges.emplace_back(v, v + width);
    }
  }
  return Graph(width * height, std::move(edges), std::move(coords));
}

Graph lattice_region(std::span<const Coord> sites) {
  if (sites.empty()) throw DimensionError("lattice region needs at least one site");
  std::map<Coord, std::size_t> index;
  for (std::size_t v = 0; v < sites.size(); ++v) {
    if (!index.emplace(sites[v], v).second) throw DimensionError("repeated lattice site");
  }
  std::vector<Graph::Edge> edges;
  for (std::size_t v = 0; v < sites.size(); ++v) {
    for (Coord d : {Coord{0, 1}, Coord{1, 0}}) {
      auto it = index.find({sites[v].row + d.row, sites[v].col + d.col});
      if (it != index.end()) edges.emplace_back(v, it->second);
    }
  }
  return Graph(sites.size(), std::move(edges), std::vector<Coord>(sites.begin(), sites.end()));
}

PauliString cluster_stabilizer(const Graph& g, std::size_t a) {
  if (a >= g.num_vertices()) throw DimensionError("vertex " + std::to_string(a) + " out of range");
  PauliString k(g.num_vertices());
  k.set(a, 'X');
  for (std::size_t b : g.neighbors(a)) k.set(b, 'Z');
  return k;
}

std::vector<PauliString> cluster_stabilizers(const Graph& g) {
  std::vector<PauliString> out;
  out.reserve(g.num_vertices());
  for (std::size_t a = 0; a < g.num_vertices(); ++a) out.push_back(cluster_stabilizer(g, a));
  return out;
}

Tableau build_cluster_tableau(const Graph& g) {
  Tableau t(g.num_vertices());
  for (std::size_t q = 0; q < g.num_vertices(); ++q) t.apply(CliffordGate::h(q));
  for (const auto& [u, v] : g.edges()) t.apply(CliffordGate::cz(u, v));
  return t;
}

StateVector build_cluster_dense(const Graph& g, std::size_t qubit_cap) {
  StateVector s(g.num_vertices(), qubit_cap);
  auto amps = s.amplitudes();
  const double a = std::pow(2.0, -0.5 * static_cast<double>(g.num_vertices()));
  std::vector<std::size_t> masks;
  for (const auto& [u, v] : g.edges()) masks.push_back((std::size_t{1} << u) | (std::size_t{1} << v));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    int sign = 1;
    for (std::size_t m : masks) {
      if ((i & m) == m) sign = -sign;
    }
    amps[i] = sign * a;
  }
  return s;
}

namespace {

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> target_qubits(const Perturbation& model, std::size_t n) {
  if (model.qubits.empty()) {
    std::vector<std::size_t> all(n);
    for (std::size_t q = 0; q < n; ++q) all[q] = q;
    return all;
  }
  for (std::size_t q : model.qubits) {
    if (q >= n) throw DimensionError("perturbation qubit " + std::to_string(q) + " out of range");
  }
  return model.qubits;
}

}  // namespace

BranchEnsemble perturb(const StateVector& s, const Perturbation& model, std::size_t max_members) {
  if (!std::isfinite(model.strength)) throw ParseError("perturbation strength must be finite");
  const auto qubits = target_qubits(model, s.num_qubits());
  StateVector out = s;
  switch (model.model) {
    case Perturbation::Model::None: return BranchEnsemble(std::move(out));
    case Perturbation::Model::LocalZRotation:
      for (std::size_t q : qubits) out.apply_uz(q, model.strength);
      return BranchEnsemble(std::move(out));
    case Perturbation::Model::LocalXRotation:
      for (std::size_t q : qubits) out.apply_ux(q, model.strength);
      return BranchEnsemble(std::move(out));
    case Perturbation::Model::RandomLocalRotation: {
      if (model.strength < 0) throw ParseError("rotation strength must be non-negative");
      std::mt19937_64 rng(model.seed);
      const double c = std::cos(model.strength / 2), sn = std::sin(model.strength / 2);
      for (std::size_t q : qubits) {
        const double nz = 2 * unit_uniform(rng) - 1;
        const double phi = 2 * std::numbers::pi * unit_uniform(rng);
        const double r = std::sqrt(std::max(0.0, 1 - nz * nz));
        const double nx = r * std::cos(phi), ny = r * std::sin(phi);
        // exp(-i s/2 n.sigma) = cos I - i sin (nx X + ny Y + nz Z)
        const Matrix2 u = {Complex(c, -sn * nz), Complex(-sn * ny, -sn * nx), Complex(sn * ny, -sn * nx),
                           Complex(c, sn * nz)};
        out.apply_matrix(q, u);
      }
      return BranchEnsemble(std::move(out));
    }
    case Perturbation::Model::Depolarizing: {
      const double p = model.strength;
      if (p < 0.0 || p > 1.0) throw ParseError("depolarizing probability must lie in [0, 1]");
      const double w_keep = 1.0 - 0.75 * p, w_kick = 0.25 * p;
      std::vector<BranchEnsemble::Member> members{{1.0, std::move(out)}};
      for (std::size_t q : qubits) {
        std::vector<BranchEnsemble::Member> next;
        for (auto& m : members) {
          if (w_kick > 0.0) {
            for (char pauli : {'X', 'Y', 'Z'}) {
              StateVector kicked = m.state;
              kicked.apply_pauli(PauliString::single(s.num_qubits(), q, pauli));
              next.push_back({m.weight * w_kick, std::move(kicked)});
            }
          }
          if (w_keep > 0.0) next.push_back({m.weight * w_keep, std::move(m.state)});
          if (next.size() > max_members) {
            throw ResourceLimitError("depolarizing ensemble exceeds " + std::to_string(max_members) + " members");
          }
        }
        members = std::move(next);
      }
      return BranchEnsemble(std::move(members));
    }
  }
  return BranchEnsemble(std::move(out));
}

}  // namespace mbqc
