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
#include <string>
#include <utility>
#include <vector>

#include "mbqc/basis.hpp"
#include "mbqc/lattice.hpp"
#include "mbqc/operator_expression.hpp"
#include "mbqc/pauli.hpp"
#include "mbqc/state_vector.hpp"

namespace mbqc {

/// Measurement outcomes m_q = +-1 keyed by qubit, in measurement order.
class OutcomeRecord {
 public:
  void record(std::size_t qubit, int outcome);
  bool contains(std::size_t qubit) const;
  /// Throws DimensionError for a qubit with no recorded outcome.
  int at(std::size_t qubit) const;
  const std::vector<std::pair<std::size_t, int>>& entries() const { return entries_; }
  void pop_back() { entries_.pop_back(); }

 private:
  std::vector<std::pair<std::size_t, int>> entries_;
};

/// One single-qubit measurement.  For XEta the measured observable is
/// X_eta with eta = angle * prod of the dependency qubits' outcomes.
struct MeasurementStep {
  std::size_t qubit = 0;
  MeasurementBasis basis = MeasurementBasis::Z;
  double angle = 0.0;
  std::vector<std::size_t> angle_dependencies;

  /// Resolves the basis against outcomes recorded so far.
  SingleQubitObservable observable(const OutcomeRecord& so_far) const;
  /// Pauli letter of the basis; XEta steps report 'X' (their Clifford skeleton).
  char skeleton_pauli() const;
  bool operator==(const MeasurementStep&) const = default;
};

/// p = [1 - sign * prod_{f in factors} m_f] / 2, in {0, 1}.
struct ParityFormula {
  int sign = 1;
  std::vector<std::size_t> factors;  // sorted, no repeats

  static ParityFormula of(std::vector<std::size_t> factors, int sign = 1);
  int evaluate(const OutcomeRecord& j) const;
  /// Parity sum mod 2: signs multiply, factor sets take a symmetric difference.
  ParityFormula operator^(const ParityFormula& o) const;
  bool operator==(const ParityFormula&) const = default;
  std::string str() const;
};

/// U_J = X^{p_X} Z^{p_Z} on one output qubit.
struct Correction {
  std::size_t qubit = 0;
  ParityFormula x_parity;
  ParityFormula z_parity;
  bool operator==(const Correction&) const = default;
};

/// Images of each input's X and Z under the ideal gate, as expressions on
/// the output register (output order).
struct IdealMap {
  std::vector<OperatorExpression> x_images;
  std::vector<OperatorExpression> z_images;
};

/// A correlation the ideal resource state pins to ideal_value, expressed on
/// the resource register (inputs then outputs).
struct TargetCorrelation {
  std::string label;
  OperatorExpression observable;
  double ideal_value = 1.0;
};

/// Declarative measurement pattern: which qubits are measured in which
/// basis, how the outputs are corrected, and what the ideal resource is.
///
/// Plans are plain data; the correlator executes them on either backend.
struct GatePlan {
  std::string label;
  Graph graph;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
  std::vector<MeasurementStep> steps;
  std::vector<Correction> corrections;  // parallel to outputs
  IdealMap ideal;
  std::vector<TargetCorrelation> targets;

  std::size_t num_qubits() const { return graph.num_vertices(); }
  bool adaptive() const;
  /// inputs followed by outputs.
  std::vector<std::size_t> resource_register() const;
  std::vector<std::size_t> measured_qubits() const;
  /// Angles of XEta steps in step order; index k is angle symbol k.
  std::vector<double> angles() const;
  /// Symbol index of the XEta step measuring qubit q.
  std::size_t angle_symbol(std::size_t qubit) const;
  /// X_in (x) image(X) and Z_in (x) image(Z) per input, on the resource register.
  std::vector<OperatorExpression> ideal_stabilizers() const;

  /// Throws UnsupportedError naming the first broken invariant.
  void validate() const;
};

/// Full-register Pauli X^{p_X} Z^{p_Z} over all outputs for outcomes j.
PauliString correction_for(const GatePlan& plan, const OutcomeRecord& j);

/// Identity wire between k and k + 2l on a chain containing k-1 .. k+2l+1.
GatePlan identity_plan(const Graph& chain_graph, std::size_t k, std::size_t l);
/// Seven-qubit chain plans with input 1 and output 5.
GatePlan hadamard_plan(const Graph& chain_graph);
GatePlan hadamard_plan();
GatePlan pi2_plan(const Graph& chain_graph);
GatePlan pi2_plan();
GatePlan zrot_plan(const Graph& chain_graph, double theta);
GatePlan zrot_plan(double theta);

/// Sites used by the diagonal identity of length n: the staircase
/// (i,i), (i+1,i) and the six Z-measured end sites; with_sides adds the
/// unmeasured lattice neighbours of the staircase.
std::vector<Coord> diagonal_region_sites(std::size_t n, bool with_sides);
/// Diagonal identity from (1,1) to (n,n) on a coordinate graph holding the
/// sites of diagonal_region_sites(n, false).
GatePlan diag_identity_plan_2d(const Graph& lattice, std::size_t n);

/// Joins p1's output to p2's input (both single-qubit chain plans).
GatePlan concatenate(const GatePlan& p1, const GatePlan& p2);

/// Whether g is the path 0 - 1 - ... - (n-1).
bool is_chain(const Graph& g);

/// Composes single-qubit ideal maps: first then second.
IdealMap compose_single_qubit(const IdealMap& first, const IdealMap& second);

}  // namespace mbqc
