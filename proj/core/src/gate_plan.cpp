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

#include "mbqc/gate_plan.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <sstream>

#include "mbqc/density.hpp"
#include "mbqc/error.hpp"
#include "mbqc/plan_compiler.hpp"

namespace mbqc {

void OutcomeRecord::record(std::size_t qubit, int outcome) {
  if (outcome != 1 && outcome != -1) throw DimensionError("outcome must be +1 or -1");
  if (contains(qubit)) throw DimensionError("outcome for qubit " + std::to_string(qubit) + " recorded twice");
  entries_.emplace_back(qubit, outcome);
}

bool OutcomeRecord::contains(std::size_t qubit) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == qubit; });
}

int OutcomeRecord::at(std::size_t qubit) const {
  for (const auto& [q, m] : entries_) {
    if (q == qubit) return m;
  }
  throw DimensionError("missing outcome for qubit " + std::to_string(qubit));
}

SingleQubitObservable MeasurementStep::observable(const OutcomeRecord& so_far) const {
  SingleQubitObservable obs{basis, 0.0};
  if (basis == MeasurementBasis::XEta) {
    double eta = angle;
    for (std::size_t d : angle_dependencies) eta *= so_far.at(d);
    obs.angle = eta;
  }
  return obs;
}

char MeasurementStep::skeleton_pauli() const {
  switch (basis) {
    case MeasurementBasis::X:
    case MeasurementBasis::XEta:
      return 'X';
    case MeasurementBasis::Y:
      return 'Y';
    case MeasurementBasis::Z:
      return 'Z';
  }
  return 'I';
}

ParityFormula ParityFormula::of(std::vector<std::size_t> factors, int sign) {
  std::sort(factors.begin(), factors.end());
  ParityFormula out;
  out.sign = sign;
  // m_f^2 = 1, so repeated factors cancel in pairs.
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t j = i;
    while (j < factors.size() && factors[j] == factors[i]) ++j;
    if ((j - i) % 2 == 1) out.factors.push_back(factors[i]);
    i = j;
  }
  return out;
}

int ParityFormula::evaluate(const OutcomeRecord& j) const {
  int prod = sign;
  for (std::size_t f : factors) prod *= j.at(f);
  return prod == 1 ? 0 : 1;
}

ParityFormula ParityFormula::operator^(const ParityFormula& o) const {
  // (1 - a)/2 xor (1 - b)/2 = (1 - ab)/2 for a, b = +-1.
  std::vector<std::size_t> all = factors;
  all.insert(all.end(), o.factors.begin(), o.factors.end());
  return of(std::move(all), sign * o.sign);
}

std::string ParityFormula::str() const {
  if (factors.empty()) return sign == 1 ? "0" : "1";
  std::ostringstream os;
  os << "[1 " << (sign == 1 ? '-' : '+') << ' ';
  for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? " m" : "m") << factors[i];
  os << "]/2";
  return os.str();
}

bool GatePlan::adaptive() const {
  return std::any_of(steps.begin(), steps.end(), [](const auto& s) { return s.basis == MeasurementBasis::XEta; });
}

std::vector<std::size_t> GatePlan::resource_register() const {
  std::vector<std::size_t> r = inputs;
  r.insert(r.end(), outputs.begin(), outputs.end());
  return r;
}

std::vector<std::size_t> GatePlan::measured_qubits() const {
  std::vector<std::size_t> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.qubit);
  return out;
}

std::vector<double> GatePlan::angles() const {
  std::vector<double> out;
  for (const auto& s : steps) {
    if (s.basis == MeasurementBasis::XEta) out.push_back(s.angle);
  }
  return out;
}

std::size_t GatePlan::angle_symbol(std::size_t qubit) const {
  std::size_t k = 0;
  for (const auto& s : steps) {
    if (s.basis != MeasurementBasis::XEta) continue;
    if (s.qubit == qubit) return k;
    ++k;
  }
  throw DimensionError("qubit " + std::to_string(qubit) + " has no XEta step");
}

std::vector<OperatorExpression> GatePlan::ideal_stabilizers() const {
  const std::size_t r = inputs.size() + outputs.size();
  std::vector<std::size_t> out_pos(outputs.size());
  std::iota(out_pos.begin(), out_pos.end(), inputs.size());
  std::vector<OperatorExpression> out;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (char p : {'X', 'Z'}) {
      const OperatorExpression img = (p == 'X' ? ideal.x_images : ideal.z_images).at(i).embed(r, out_pos);
      const PauliString in = PauliString::single(r, i, p);
      OperatorExpression s(r);
      for (const auto& t : img.terms()) s.add(in * t.op, t.coefficient);
      out.push_back(std::move(s));
    }
  }
  return out;
}

void GatePlan::validate() const {
  const std::size_t n = num_qubits();
  auto fail = [&](const std::string& why) { throw UnsupportedError("plan '" + label + "': " + why); };
  if (n == 0) fail("empty graph");
  if (inputs.empty() || inputs.size() != outputs.size()) fail("inputs and outputs must be non-empty and equal in number");

  std::set<std::size_t> resource;
  for (std::size_t q : resource_register()) {
    if (q >= n) fail("resource qubit " + std::to_string(q) + " outside the graph");
    if (!resource.insert(q).second) fail("resource qubit " + std::to_string(q) + " listed twice");
  }

  std::set<std::size_t> measured;
  for (const auto& s : steps) {
    if (s.qubit >= n) fail("measured qubit " + std::to_string(s.qubit) + " outside the graph");
    if (resource.count(s.qubit)) fail("resource qubit " + std::to_string(s.qubit) + " is measured");
    if (s.basis != MeasurementBasis::XEta && !s.angle_dependencies.empty()) fail("only XEta steps may depend on outcomes");
    for (std::size_t d : s.angle_dependencies) {
      if (!measured.count(d)) fail("XEta dependency " + std::to_string(d) + " is not measured earlier");
    }
    if (!measured.insert(s.qubit).second) fail("qubit " + std::to_string(s.qubit) + " measured twice");
  }

  if (corrections.size() != outputs.size()) fail("one correction per output required");
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (corrections[i].qubit != outputs[i]) fail("correction order must follow the outputs");
    for (const ParityFormula* p : {&corrections[i].x_parity, &corrections[i].z_parity}) {
      for (std::size_t f : p->factors) {
        if (!measured.count(f)) fail("parity factor m" + std::to_string(f) + " is not a measured qubit");
      }
    }
  }

  if (ideal.x_images.size() != inputs.size() || ideal.z_images.size() != inputs.size()) fail("ideal map size mismatch");
  for (const auto* images : {&ideal.x_images, &ideal.z_images}) {
    for (const auto& e : *images) {
      if (e.num_qubits() != outputs.size()) fail("ideal image must act on the output register");
    }
  }
  const std::size_t r = inputs.size() + outputs.size();
  for (const auto& t : targets) {
    if (t.observable.num_qubits() != r) fail("target '" + t.label + "' must act on the resource register");
  }

  // Ideal stabilizers: involutions that commute and fix a single state.
  const auto stabs = ideal_stabilizers();
  std::vector<Eigen::MatrixXcd> mats;
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << r);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& s : stabs) mats.push_back(to_matrix(s));
  constexpr double tol = 1e-9;
  for (std::size_t a = 0; a < mats.size(); ++a) {
    if ((mats[a] * mats[a] - id).norm() > tol) fail("ideal stabilizer " + stabs[a].str() + " does not square to I");
    for (std::size_t b = a + 1; b < mats.size(); ++b) {
      if ((mats[a] * mats[b] - mats[b] * mats[a]).norm() > tol) fail("ideal stabilizers do not commute");
    }
  }
  Eigen::MatrixXcd proj = id;
  for (const auto& m : mats) proj = proj * (id + m) * 0.5;
  if (std::abs(proj.trace() - std::complex<double>(1.0, 0.0)) > tol) fail("ideal stabilizers are not independent");
}

PauliString correction_for(const GatePlan& plan, const OutcomeRecord& j) {
  PauliString u(plan.num_qubits());
  for (const auto& c : plan.corrections) {
    if (c.x_parity.evaluate(j)) u *= PauliString::single(plan.num_qubits(), c.qubit, 'X');
    if (c.z_parity.evaluate(j)) u *= PauliString::single(plan.num_qubits(), c.qubit, 'Z');
  }
  return u;
}

bool is_chain(const Graph& g) {
  if (g.num_vertices() == 0 || g.edges().size() + 1 != g.num_vertices()) return false;
  for (std::size_t i = 0; i + 1 < g.num_vertices(); ++i) {
    if (!g.adjacent(i, i + 1)) return false;
  }
  return true;
}

namespace {

OperatorExpression pauli_expr(std::string_view dense, double c = 1.0) {
  return OperatorExpression::from_pauli(PauliString::from_str(dense), c);
}

MeasurementStep step(std::size_t q, MeasurementBasis b) { return MeasurementStep{q, b, 0.0, {}}; }

IdealMap single_map(OperatorExpression x_image, OperatorExpression z_image) {
  IdealMap m;
  m.x_images.push_back(std::move(x_image));
  m.z_images.push_back(std::move(z_image));
  return m;
}

std::vector<TargetCorrelation> stabilizer_targets(const GatePlan& p) {
  std::vector<TargetCorrelation> out;
  const auto stabs = p.ideal_stabilizers();
  for (std::size_t i = 0; i < stabs.size(); ++i) {
    out.push_back({(i % 2 == 0 ? "X->" : "Z->") + std::to_string(i / 2), stabs[i], 1.0});
  }
  return out;
}

void require_seven_chain(const Graph& g, const char* gate) {
  if (!is_chain(g)) throw UnsupportedError(std::string(gate) + " plan needs a chain graph");
  if (g.num_vertices() != 7) throw DimensionError(std::string(gate) + " needs a chain of exactly 7 qubits");
}

GatePlan seven_qubit_plan(const Graph& g, std::string label) {
  GatePlan p;
  p.label = std::move(label);
  p.graph = g;
  p.inputs = {1};
  p.outputs = {5};
  return p;
}

}  // namespace

GatePlan identity_plan(const Graph& g, std::size_t k, std::size_t l) {
  if (!is_chain(g)) throw UnsupportedError("identity plan needs a chain graph");
  if (k < 1 || l < 1 || k + 2 * l + 1 >= g.num_vertices()) {
    throw DimensionError("chain too short: identity plan needs qubits k-1 .. k+2l+1");
  }
  GatePlan p;
  p.label = "identity";
  p.graph = g;
  p.inputs = {k};
  p.outputs = {k + 2 * l};
  p.steps.push_back(step(k - 1, MeasurementBasis::Z));
  for (std::size_t q = k + 1; q < k + 2 * l; ++q) p.steps.push_back(step(q, MeasurementBasis::X));
  p.steps.push_back(step(k + 2 * l + 1, MeasurementBasis::Z));

  std::vector<std::size_t> zf{k - 1, k + 2 * l + 1};
  for (std::size_t j = 1; j < l; ++j) zf.push_back(k + 2 * j);
  std::vector<std::size_t> xf;
  for (std::size_t j = 1; j <= l; ++j) xf.push_back(k + 2 * j - 1);
  p.corrections = {{k + 2 * l, ParityFormula::of(xf), ParityFormula::of(zf)}};
  p.ideal = single_map(pauli_expr("X"), pauli_expr("Z"));
  p.targets = {{"XX", pauli_expr("XX"), 1.0}, {"ZZ", pauli_expr("ZZ"), 1.0}, {"YY", pauli_expr("YY"), -1.0}};
  p.validate();
  return p;
}

GatePlan hadamard_plan(const Graph& g) {
  require_seven_chain(g, "hadamard plan");
  GatePlan p = seven_qubit_plan(g, "hadamard");
  p.steps = {step(0, MeasurementBasis::Z), step(2, MeasurementBasis::Y), step(3, MeasurementBasis::Y),
             step(4, MeasurementBasis::Y), step(6, MeasurementBasis::Z)};
  p.corrections = {{5, ParityFormula::of({0, 3, 4}), ParityFormula::of({2, 3, 6})}};
  p.ideal = single_map(pauli_expr("Z"), pauli_expr("X"));
  p.targets = {{"XZ", pauli_expr("XZ"), 1.0}, {"ZX", pauli_expr("ZX"), 1.0}};
  p.validate();
  return p;
}

GatePlan hadamard_plan() { return hadamard_plan(chain(7)); }

GatePlan pi2_plan(const Graph& g) {
  require_seven_chain(g, "pi/2 plan");
  GatePlan p = seven_qubit_plan(g, "pi2");
  p.steps = {step(0, MeasurementBasis::Z), step(2, MeasurementBasis::X), step(3, MeasurementBasis::Y),
             step(4, MeasurementBasis::X), step(6, MeasurementBasis::Z)};
  p.corrections = {{5, ParityFormula::of({2, 4}), ParityFormula::of({0, 2, 3, 6})}};
  p.ideal = single_map(pauli_expr("Y", -1.0), pauli_expr("Z"));
  p.targets = {{"ZZ", pauli_expr("ZZ"), 1.0}, {"X(-Y)", pauli_expr("XY", -1.0), 1.0}};
  p.validate();
  return p;
}

GatePlan pi2_plan() { return pi2_plan(chain(7)); }

GatePlan zrot_plan(const Graph& g, double theta) {
  require_seven_chain(g, "z-rotation plan");
  if (!std::isfinite(theta)) throw DimensionError("rotation angle must be finite");
  GatePlan p = seven_qubit_plan(g, "zrot");
  p.steps = {step(0, MeasurementBasis::Z), step(2, MeasurementBasis::X), MeasurementStep{3, MeasurementBasis::XEta, theta, {2}},
             step(4, MeasurementBasis::X), step(6, MeasurementBasis::Z)};
  p.corrections = {{5, ParityFormula::of({2, 4}), ParityFormula::of({0, 3, 6})}};
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  OperatorExpression x_minus_theta = pauli_expr("X", c) - pauli_expr("Y", s);
  p.ideal = single_map(x_minus_theta, pauli_expr("Z"));
  p.targets = {{"ZZ", pauli_expr("ZZ"), 1.0},
               {"XX_{-theta}", pauli_expr("XX", c) - pauli_expr("XY", s), 1.0}};
  p.validate();
  return p;
}

GatePlan zrot_plan(double theta) { return zrot_plan(chain(7), theta); }

std::vector<Coord> diagonal_region_sites(std::size_t n, bool with_sides) {
  if (n < 2) throw DimensionError("diagonal identity needs n >= 2");
  const auto N = static_cast<int>(n);
  std::vector<Coord> sites;
  for (int i = 1; i <= N; ++i) {
    sites.push_back({i, i});
    if (i < N) sites.push_back({i + 1, i});
  }
  const std::vector<Coord> ends{{0, 1}, {1, 0}, {2, 0}, {N, N + 1}, {N + 1, N}, {N + 1, N - 1}};
  sites.insert(sites.end(), ends.begin(), ends.end());
  if (with_sides) {
    std::set<Coord> present(sites.begin(), sites.end());
    std::set<Coord> sides;
    for (std::size_t i = 0; i < 2 * n - 1; ++i) {
      const Coord c = sites[i];
      for (Coord d : {Coord{c.row - 1, c.col}, Coord{c.row + 1, c.col}, Coord{c.row, c.col - 1}, Coord{c.row, c.col + 1}}) {
        if (!present.count(d)) sides.insert(d);
      }
    }
    sites.insert(sites.end(), sides.begin(), sides.end());
  }
  return sites;
}

GatePlan diag_identity_plan_2d(const Graph& lattice, std::size_t n) {
  if (!lattice.has_coords()) throw DimensionError("diagonal identity needs a lattice with coordinates");
  const auto minimal = diagonal_region_sites(n, false);
  auto at = [&](Coord c) {
    const auto v = lattice.vertex_at(c);
    if (!v) {
      throw DimensionError("lattice too small: missing site (" + std::to_string(c.row) + "," + std::to_string(c.col) + ")");
    }
    return *v;
  };
  for (Coord c : minimal) at(c);

  const auto N = static_cast<int>(n);
  GatePlan p;
  p.label = "diag2d";
  p.graph = lattice;
  p.inputs = {at({1, 1})};
  p.outputs = {at({N, N})};
  for (std::size_t i = 1; i + 1 < 2 * n - 1; ++i) p.steps.push_back(step(at(minimal[i]), MeasurementBasis::X));
  for (std::size_t i = 2 * n - 1; i < minimal.size(); ++i) p.steps.push_back(step(at(minimal[i]), MeasurementBasis::Z));
  p.corrections = derive_corrections(p.graph, p.inputs, p.outputs, p.steps);
  p.ideal = single_map(pauli_expr("X"), pauli_expr("Z"));
  p.targets = {{"XX", pauli_expr("XX"), 1.0}, {"ZZ", pauli_expr("ZZ"), 1.0}};
  p.validate();
  return p;
}

IdealMap compose_single_qubit(const IdealMap& first, const IdealMap& second) {
  if (first.x_images.size() != 1 || second.x_images.size() != 1) {
    throw UnsupportedError("map composition is implemented for single-qubit gates");
  }
  const Eigen::MatrixXcd mx = to_matrix(second.x_images[0]);
  const Eigen::MatrixXcd mz = to_matrix(second.z_images[0]);
  const Eigen::MatrixXcd my = std::complex<double>(0.0, 1.0) * mx * mz;  // Y = iXZ
  auto apply = [&](const OperatorExpression& e) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    for (const auto& t : e.terms()) {
      switch (t.op.at(0)) {
        case 'I':
          m += t.coefficient * Eigen::MatrixXcd::Identity(2, 2);
          break;
        case 'X':
          m += t.coefficient * mx;
          break;
        case 'Y':
          m += t.coefficient * my;
          break;
        default:
          m += t.coefficient * mz;
          break;
      }
    }
    return pauli_decompose(m);
  };
  return single_map(apply(first.x_images[0]), apply(first.z_images[0]));
}

GatePlan concatenate(const GatePlan& p1, const GatePlan& p2) {
  for (const GatePlan* p : {&p1, &p2}) {
    if (p->inputs.size() != 1 || p->outputs.size() != 1) {
      throw UnsupportedError("concatenation joins single-input, single-output plans");
    }
    if (!is_chain(p->graph)) throw UnsupportedError("concatenation needs plans on chain segments");
  }
  if (p1.adaptive() && p2.adaptive()) {
    throw UnsupportedError(
        "cannot concatenate two adaptive plans: the composite corrections would depend on the rotation angles, "
        "so no outcome-independent correlation form exists");
  }
  if (p2.adaptive()) {
    throw UnsupportedError(
        "an adaptive plan can only come first: its basis would otherwise need the preceding plan's byproduct "
        "corrections, which are not part of the angle rule");
  }
  const std::size_t n1 = p1.num_qubits();
  const std::size_t n2 = p2.num_qubits();
  const std::size_t joint = p1.outputs[0];
  auto has_z = [](const GatePlan& p, std::size_t q) {
    return std::any_of(p.steps.begin(), p.steps.end(),
                       [&](const auto& s) { return s.qubit == q && s.basis == MeasurementBasis::Z; });
  };
  if (joint + 2 != n1 || !has_z(p1, n1 - 1)) {
    throw UnsupportedError("first plan must end with its output followed by one Z-measured qubit");
  }
  if (p2.inputs[0] != 1 || !has_z(p2, 0)) {
    throw UnsupportedError("second plan must start with one Z-measured qubit followed by its input");
  }

  auto remap = [&](std::size_t q) { return q + joint - 1; };
  GatePlan p;
  p.label = p1.label + "." + p2.label;
  p.graph = chain(n1 + n2 - 3);
  p.inputs = p1.inputs;
  p.outputs = {remap(p2.outputs[0])};
  for (const auto& s : p1.steps) {
    if (s.qubit != n1 - 1) p.steps.push_back(s);
  }
  p.steps.push_back(step(joint, MeasurementBasis::X));
  for (auto s : p2.steps) {
    if (s.qubit == 0) continue;
    s.qubit = remap(s.qubit);
    for (auto& d : s.angle_dependencies) d = remap(d);
    p.steps.push_back(std::move(s));
  }
  p.corrections = derive_corrections(p.graph, p.inputs, p.outputs, p.steps);
  p.ideal = compose_single_qubit(p1.ideal, p2.ideal);
  p.targets = stabilizer_targets(p);
  p.validate();
  return p;
}

}  // namespace mbqc
