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

#include "mbqc/state_vector.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "mbqc/error.hpp"

namespace mbqc {

std::string_view name_of(MeasurementBasis b) {
  switch (b) {
    case MeasurementBasis::X: return "X";
    case MeasurementBasis::Y: return "Y";
    case MeasurementBasis::Z: return "Z";
    case MeasurementBasis::XEta: return "XEta";
  }
  return "?";
}

MeasurementBasis parse_basis(std::string_view name) {
  if (name == "X") return MeasurementBasis::X;
  if (name == "Y") return MeasurementBasis::Y;
  if (name == "Z") return MeasurementBasis::Z;
  if (name == "XEta") return MeasurementBasis::XEta;
  throw ParseError("unknown measurement basis '" + std::string(name) + "'");
}

namespace {

constexpr std::size_t kHardQubitLimit = 40;

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap || n > kHardQubitLimit) {
    throw ResourceLimitError("dense state on " + std::to_string(n) + " qubits exceeds the cap of " +
                             std::to_string(std::min(cap, kHardQubitLimit)));
  }
}

Complex phase_coefficient(int log_i) {
  switch (((log_i % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

struct DenseMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex coefficient;
};

DenseMasks masks_of(const PauliString& p, std::size_t n) {
  if (p.size() != n) {
    throw DimensionError("Pauli on " + std::to_string(p.size()) + " qubits applied to " + std::to_string(n) +
                         "-qubit state");
  }
  DenseMasks m;
  if (n > 0) {
    m.x = p.x_words()[0];
    m.z = p.z_words()[0];
  }
  // Y = iXZ: every Y contributes a factor i beyond the string phase.
  m.coefficient = phase_coefficient(p.phase().log_i() + std::popcount(m.x & m.z));
  return m;
}

}  // namespace

StateVector::StateVector(std::size_t n, std::size_t qubit_cap) : n_(n) {
  check_cap(n, qubit_cap);
  amps_.assign(std::size_t{1} << n, Complex{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(std::size_t n, std::uint64_t index, std::size_t qubit_cap) {
  StateVector s(n, qubit_cap);
  if (index >= s.amps_.size()) throw DimensionError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim == 0 || (dim & (dim - 1)) != 0) throw DimensionError("amplitude count must be a power of two");
  StateVector s;
  s.n_ = static_cast<std::size_t>(std::countr_zero(dim));
  s.amps_ = std::move(amplitudes);
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

void StateVector::normalize() {
  const double norm2 = norm_squared();
  if (norm2 <= 0.0) throw NumericalError("cannot normalize a zero state");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amps_) a *= inv;
}

StateVector& StateVector::operator*=(Complex s) {
  for (auto& a : amps_) a *= s;
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& o) {
  if (o.n_ != n_) throw DimensionError("adding states of different sizes");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
  return *this;
}

void StateVector::check_qubit(std::size_t q) const {
  if (q >= n_) throw DimensionError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_));
}

void StateVector::apply_matrix(std::size_t q, const Matrix2& m, bool require_unitary) {
  check_qubit(q);
  if (require_unitary) {
    // M M^dagger == I
    const Complex d00 = m[0] * std::conj(m[0]) + m[1] * std::conj(m[1]);
    const Complex d01 = m[0] * std::conj(m[2]) + m[1] * std::conj(m[3]);
    const Complex d11 = m[2] * std::conj(m[2]) + m[3] * std::conj(m[3]);
    if (std::abs(d00 - 1.0) > 1e-10 || std::abs(d01) > 1e-10 || std::abs(d11 - 1.0) > 1e-10) {
      throw NumericalError("2x2 gate matrix is not unitary");
    }
  }
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps_[i], a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_h(std::size_t q) {
  const double r = 1.0 / std::sqrt(2.0);
  apply_matrix(q, {r, r, r, -r}, false);
}

void StateVector::apply_s(std::size_t q) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) amps_[i] *= Complex(0.0, 1.0);
  }
}

void StateVector::apply_x(std::size_t q) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

void StateVector::apply_y(std::size_t q) { apply_matrix(q, {0.0, Complex(0, -1), Complex(0, 1), 0.0}, false); }

void StateVector::apply_z(std::size_t q) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_uz(std::size_t q, double theta) {
  apply_matrix(q, {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)}, false);
}

void StateVector::apply_ux(std::size_t q, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  apply_matrix(q, {c, Complex(0, -s), Complex(0, -s), c}, false);
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw DimensionError("CZ needs two distinct qubits");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_cx(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw DimensionError("CX needs two distinct qubits");
  const std::size_t cbit = std::size_t{1} << control, tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  const DenseMasks m = masks_of(p, n_);
  std::vector<Complex> out(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const Complex v = (std::popcount(i & m.z) & 1) ? -amps_[i] : amps_[i];
    out[i ^ m.x] = m.coefficient * v;
  }
  amps_.swap(out);
}

Complex StateVector::expectation_raw(const PauliString& p) const {
  const DenseMasks m = masks_of(p, n_);
  Complex total = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const Complex v = std::conj(amps_[i ^ m.x]) * amps_[i];
    total += (std::popcount(i & m.z) & 1) ? -v : v;
  }
  return m.coefficient * total;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) throw DimensionError("inner product of states of different sizes");
  Complex total = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) total += std::conj(amps_[i]) * other.amps_[i];
  return total;
}

std::string StateVector::dump() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (std::abs(amps_[i]) > 1e-15) os << i << " " << amps_[i].real() << " " << amps_[i].imag() << "\n";
  }
  return os.str();
}

void apply_gate(StateVector& s, const DenseGate& gate) {
  switch (gate.kind) {
    case DenseGate::Kind::H: s.apply_h(gate.q0); break;
    case DenseGate::Kind::S: s.apply_s(gate.q0); break;
    case DenseGate::Kind::X: s.apply_x(gate.q0); break;
    case DenseGate::Kind::Y: s.apply_y(gate.q0); break;
    case DenseGate::Kind::Z: s.apply_z(gate.q0); break;
    case DenseGate::Kind::UZ: s.apply_uz(gate.q0, gate.angle); break;
    case DenseGate::Kind::UX: s.apply_ux(gate.q0, gate.angle); break;
    case DenseGate::Kind::CZ: s.apply_cz(gate.q0, gate.q1); break;
    case DenseGate::Kind::CX: s.apply_cx(gate.q0, gate.q1); break;
    case DenseGate::Kind::Matrix: s.apply_matrix(gate.q0, gate.matrix, true); break;
  }
}

Matrix2 SingleQubitObservable::matrix() const {
  switch (basis) {
    case MeasurementBasis::X: return {0.0, 1.0, 1.0, 0.0};
    case MeasurementBasis::Y: return {0.0, Complex(0, -1), Complex(0, 1), 0.0};
    case MeasurementBasis::Z: return {1.0, 0.0, 0.0, -1.0};
    case MeasurementBasis::XEta: return {0.0, std::polar(1.0, -angle), std::polar(1.0, angle), 0.0};
  }
  return {};
}

void project(StateVector& s, const SingleQubitObservable& obs, std::size_t q, int outcome) {
  const Matrix2 o = obs.matrix();
  const double sgn = outcome > 0 ? 0.5 : -0.5;
  const Matrix2 proj = {0.5 + sgn * o[0], sgn * o[1], sgn * o[2], 0.5 + sgn * o[3]};
  s.apply_matrix(q, proj, false);
}

std::array<Branch, 2> measure_branches(const StateVector& s, const SingleQubitObservable& obs, std::size_t q) {
  std::array<Branch, 2> out;
  const double norm2 = s.norm_squared();
  for (int k = 0; k < 2; ++k) {
    const int outcome = k == 0 ? 1 : -1;
    StateVector post = s;
    project(post, obs, q, outcome);
    Branch& b = out[k];
    b.outcome = outcome;
    b.probability = post.norm_squared() / norm2;
    if (b.probability < kNegligibleProbability) {
      b.negligible = true;
    } else {
      post.normalize();
      b.state = std::move(post);
    }
  }
  return out;
}

BranchEnsemble::BranchEnsemble(StateVector pure) { members_.push_back({1.0, std::move(pure)}); }

BranchEnsemble::BranchEnsemble(std::vector<Member> members) : members_(std::move(members)) {}

double BranchEnsemble::total_weight() const {
  double total = 0.0;
  for (const auto& m : members_) total += m.weight;
  return total;
}

void BranchEnsemble::add(double weight, StateVector state) {
  if (!members_.empty() && state.num_qubits() != num_qubits()) {
    throw DimensionError("ensemble members must share a qubit count");
  }
  members_.push_back({weight, std::move(state)});
}

void BranchEnsemble::validate() const {
  if (members_.empty()) throw NumericalError("empty ensemble");
  for (const auto& m : members_) {
    if (m.weight < 0.0) throw NumericalError("negative ensemble weight");
    if (m.state.num_qubits() != num_qubits()) throw DimensionError("ensemble members differ in size");
  }
  if (std::abs(total_weight() - 1.0) > 1e-10) throw NumericalError("ensemble weights do not sum to 1");
}

BranchEnsemble BranchEnsemble::maximally_mixed(std::size_t n) {
  BranchEnsemble e;
  const std::size_t dim = std::size_t{1} << n;
  const double w = 1.0 / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) e.add(w, StateVector::basis_state(n, i));
  return e;
}

double expectation(const StateVector& s, const OperatorExpression& expr) {
  if (expr.num_qubits() != s.num_qubits()) {
    throw DimensionError("expression on " + std::to_string(expr.num_qubits()) + " qubits, state has " +
                         std::to_string(s.num_qubits()));
  }
  Complex total = 0.0;
  for (const auto& t : expr.terms()) total += t.coefficient * s.expectation_raw(t.op);
  const double norm2 = s.norm_squared();
  total /= norm2;
  if (std::abs(total.imag()) > 1e-10) {
    throw NumericalError("expectation has imaginary residue " + std::to_string(total.imag()));
  }
  return total.real();
}

double expectation(const BranchEnsemble& e, const OperatorExpression& expr) {
  double total = 0.0;
  for (const auto& m : e.members()) total += m.weight * expectation(m.state, expr);
  return total;
}

double expectation(const StateVector& s, const PauliString& p) {
  return expectation(s, OperatorExpression::from_pauli(p));
}

}  // namespace mbqc
