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

#include "mbqc/plan_compiler.hpp"

#include <cstdint>
#include <optional>
#include <string>

#include "mbqc/error.hpp"

namespace mbqc {
namespace {

using Bits = std::vector<std::uint8_t>;

void xor_into(Bits& dst, const Bits& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

/// Basis of {t : C t = 0} over GF(2).
std::vector<Bits> nullspace(std::vector<Bits> rows, std::size_t cols) {
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !rows[r][c]) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i][c]) xor_into(rows[i], rows[rank]);
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<std::uint8_t> is_pivot(cols, 0);
  for (std::size_t c : pivot_col) is_pivot[c] = 1;
  std::vector<Bits> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Bits t(cols, 0);
    t[f] = 1;
    for (std::size_t i = 0; i < rank; ++i) t[pivot_col[i]] = rows[i][f];
    basis.push_back(std::move(t));
  }
  return basis;
}

/// Incremental independence test; each stored row remembers which inputs formed it.
class Span {
 public:
  explicit Span(std::size_t width) : width_(width) {}

  /// Reduces v against the stored rows; returns the combination used and the residue.
  std::pair<Bits, Bits> reduce(Bits v) const {
    Bits combo(count_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v[pivots_[i]]) {
        xor_into(v, rows_[i]);
        for (std::size_t k = 0; k < combos_[i].size(); ++k) combo[k] ^= combos_[i][k];
      }
    }
    return {combo, v};
  }

  /// Adds v if independent; returns its index among accepted vectors.
  std::optional<std::size_t> insert(const Bits& v) {
    auto [combo, residue] = reduce(v);
    std::size_t p = 0;
    while (p < width_ && !residue[p]) ++p;
    if (p == width_) return std::nullopt;
    const std::size_t index = count_++;
    for (auto& c : combos_) c.push_back(0);
    combo.push_back(1);
    rows_.push_back(std::move(residue));
    pivots_.push_back(p);
    combos_.push_back(std::move(combo));
    return index;
  }

  std::size_t size() const { return count_; }

 private:
  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<Bits> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Bits> combos_;
};

Bits resource_vector(const PauliString& p) {
  Bits v(2 * p.size(), 0);
  for (std::size_t q = 0; q < p.size(); ++q) {
    v[q] = p.x(q);
    v[p.size() + q] = p.z(q);
  }
  return v;
}

}  // namespace

std::vector<ResourceGenerator> resource_generators(const Graph& g, std::span<const std::size_t> inputs,
                                                   std::span<const std::size_t> outputs,
                                                   std::span<const MeasurementStep> steps) {
  const std::size_t n = g.num_vertices();
  std::vector<char> role(n, 'U');  // U: unmeasured non-resource, R: resource, else the basis letter
  std::vector<std::size_t> resource(inputs.begin(), inputs.end());
  resource.insert(resource.end(), outputs.begin(), outputs.end());
  for (std::size_t q : resource) {
    if (q >= n) throw DimensionError("resource qubit outside the graph");
    role[q] = 'R';
  }
  for (const auto& s : steps) {
    if (s.qubit >= n) throw DimensionError("measured qubit outside the graph");
    role[s.qubit] = s.skeleton_pauli();
  }

  // Unknown t: which K_a enter the product.  Its x-part is t, its z-part is
  // the neighbourhood sum, and each qubit constrains one or both.
  std::vector<Bits> rows;
  auto unit_row = [&](std::size_t q) {
    Bits r(n, 0);
    r[q] = 1;
    return r;
  };
  auto z_row = [&](std::size_t q) {
    Bits r(n, 0);
    for (std::size_t b : g.neighbors(q)) r[b] = 1;
    return r;
  };
  for (std::size_t q = 0; q < n; ++q) {
    switch (role[q]) {
      case 'R':
        break;
      case 'X':
        rows.push_back(z_row(q));
        break;
      case 'Y': {
        Bits r = z_row(q);
        r[q] ^= 1;
        rows.push_back(std::move(r));
        break;
      }
      case 'Z':
        rows.push_back(unit_row(q));
        break;
      default:
        rows.push_back(unit_row(q));
        rows.push_back(z_row(q));
        break;
    }
  }

  std::vector<ResourceGenerator> out;
  Span span(2 * resource.size());
  for (const Bits& t : nullspace(std::move(rows), n)) {
    PauliString full(n);
    ResourceGenerator gen;
    for (std::size_t a = 0; a < n; ++a) {
      if (t[a]) {
        full *= cluster_stabilizer(g, a);
        gen.sites.push_back(a);
      }
    }
    gen.resource_part = full.restrict_to(resource);
    if (!span.insert(resource_vector(gen.resource_part))) continue;
    for (const auto& s : steps) {
      if (full.at(s.qubit) != 'I') gen.measured_factors.push_back(s.qubit);
    }
    gen.full_product = std::move(full);
    out.push_back(std::move(gen));
  }
  if (out.size() != resource.size()) {
    throw UnsupportedError("measurement pattern leaves " + std::to_string(out.size()) + " resource stabilizers for " +
                           std::to_string(resource.size()) + " resource qubits; the resource state is not pure");
  }
  return out;
}

std::vector<Correction> derive_corrections(const Graph& g, std::span<const std::size_t> inputs,
                                           std::span<const std::size_t> outputs,
                                           std::span<const MeasurementStep> steps) {
  const auto gens = resource_generators(g, inputs, outputs, steps);
  const std::size_t r = gens.size();
  const std::size_t off = inputs.size();
  if (2 * outputs.size() != r) throw UnsupportedError("corrections need as many inputs as outputs");

  // Row k of A: which output X/Z corrections flip generator k.
  std::vector<Bits> a(r, Bits(2 * r, 0));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t o = 0; o < outputs.size(); ++o) {
      a[k][2 * o] = gens[k].resource_part.z(off + o);
      a[k][2 * o + 1] = gens[k].resource_part.x(off + o);
    }
    a[k][r + k] = 1;
  }
  // Gauss-Jordan on [A | I]; the right half becomes A^{-1}.
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (p < r && !a[p][c]) ++p;
    if (p == r) throw UnsupportedError("output Pauli corrections cannot restore every resource stabilizer");
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i != c && a[i][c]) xor_into(a[i], a[c]);
    }
  }
  std::vector<Correction> out;
  for (std::size_t o = 0; o < outputs.size(); ++o) {
    Correction c;
    c.qubit = outputs[o];
    for (std::size_t k = 0; k < r; ++k) {
      const ParityFormula pk = ParityFormula::of(gens[k].measured_factors);
      if (a[2 * o][r + k]) c.x_parity = c.x_parity ^ pk;
      if (a[2 * o + 1][r + k]) c.z_parity = c.z_parity ^ pk;
    }
    out.push_back(std::move(c));
  }
  return out;
}

int resource_group_sign(std::span<const ResourceGenerator> generators, const PauliString& p) {
  if (generators.empty()) return 0;
  Span span(2 * p.size());
  for (const auto& g : generators) {
    if (g.resource_part.size() != p.size()) throw DimensionError("resource register size mismatch");
    span.insert(resource_vector(g.resource_part));
  }
  auto [combo, residue] = span.reduce(resource_vector(p));
  for (auto b : residue) {
    if (b) return 0;
  }
  // Dependent generators were skipped by insert; indices follow accepted order.
  PauliString prod(p.size());
  std::size_t accepted = 0;
  Span check(2 * p.size());
  for (const auto& g : generators) {
    if (!check.insert(resource_vector(g.resource_part))) continue;
    if (combo[accepted++]) prod *= g.resource_part;
  }
  if (prod.phase() == p.phase()) return 1;
  if (prod.phase() == p.phase() * Phase::minus_one()) return -1;
  return 0;
}

}  // namespace mbqc
