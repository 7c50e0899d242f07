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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mbqc/basis.hpp"
#include "mbqc/operator_expression.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

using Complex = std::complex<double>;
/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Matrix2 = std::array<Complex, 4>;

inline constexpr std::size_t kDefaultDenseQubitCap = 22;

/// Dense amplitude vector; qubit q is bit q of the basis index.
///
/// Vectors may be sub-normalized when they represent an unnormalized
/// measurement branch; norm_squared() is then the branch weight.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>.  Throws ResourceLimitError when n exceeds the cap.
  explicit StateVector(std::size_t n, std::size_t qubit_cap = kDefaultDenseQubitCap);
  static StateVector basis_state(std::size_t n, std::uint64_t index,
                                 std::size_t qubit_cap = kDefaultDenseQubitCap);
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;
  /// Rescales to unit norm; throws NumericalError on a zero vector.
  void normalize();
  StateVector& operator*=(Complex s);
  StateVector& operator+=(const StateVector& o);

  void apply_h(std::size_t q);
  void apply_s(std::size_t q);
  void apply_x(std::size_t q);
  void apply_y(std::size_t q);
  void apply_z(std::size_t q);
  /// Uz(theta) = exp(-i theta Z / 2).
  void apply_uz(std::size_t q, double theta);
  /// Ux(theta) = exp(-i theta X / 2).
  void apply_ux(std::size_t q, double theta);
  void apply_cz(std::size_t a, std::size_t b);
  void apply_cx(std::size_t control, std::size_t target);
  /// Arbitrary 2x2; must be unitary to 1e-10 (checked unless the caller
  /// opts out for projectors).
  void apply_matrix(std::size_t q, const Matrix2& m, bool require_unitary = true);
  void apply_pauli(const PauliString& p);

  /// <psi|P|psi> without normalization.
  Complex expectation_raw(const PauliString& p) const;
  /// <psi|other>.
  Complex inner(const StateVector& other) const;

  /// "index re im" lines, one per amplitude above 1e-15 in modulus.
  std::string dump() const;

 private:
  void check_qubit(std::size_t q) const;
  std::size_t n_ = 0;
  std::vector<Complex> amps_;
};

/// Dense gate descriptor for apply_gate.
struct DenseGate {
  enum class Kind { H, S, X, Y, Z, UZ, UX, CZ, CX, Matrix };
  Kind kind;
  std::size_t q0 = 0;
  std::size_t q1 = 0;
  double angle = 0.0;
  Matrix2 matrix{};
};

void apply_gate(StateVector& s, const DenseGate& gate);

/// Observable on one qubit: a Pauli basis or the rotated X_eta.
struct SingleQubitObservable {
  MeasurementBasis basis = MeasurementBasis::Z;
  double angle = 0.0;  // eta, used by XEta only

  Matrix2 matrix() const;
};

struct Branch {
  int outcome = 1;
  double probability = 0.0;
  StateVector state;       // normalized; empty when negligible
  bool negligible = false;  // probability below kNegligibleProbability
};

inline constexpr double kNegligibleProbability = 1e-14;

/// Both projective branches of measuring obs on qubit q (outcome +1 first).
std::array<Branch, 2> measure_branches(const StateVector& s, const SingleQubitObservable& obs, std::size_t q);

/// Projects s onto the outcome eigenspace in place without renormalizing.
void project(StateVector& s, const SingleQubitObservable& obs, std::size_t q, int outcome);

/// Weighted mixture of pure states: rho = sum_i w_i |psi_i><psi_i|.
class BranchEnsemble {
 public:
  struct Member {
    double weight;
    StateVector state;
  };

  BranchEnsemble() = default;
  explicit BranchEnsemble(StateVector pure);
  explicit BranchEnsemble(std::vector<Member> members);

  std::size_t num_qubits() const { return members_.empty() ? 0 : members_.front().state.num_qubits(); }
  const std::vector<Member>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  double total_weight() const;

  void add(double weight, StateVector state);
  /// Throws NumericalError if weights are negative or do not sum to 1 within 1e-10.
  void validate() const;

  /// I / 2^n as the uniform mixture of computational basis states.
  static BranchEnsemble maximally_mixed(std::size_t n);

 private:
  std::vector<Member> members_;
};

/// <expr> with the imaginary residue checked against 1e-10.
double expectation(const StateVector& s, const OperatorExpression& expr);
double expectation(const BranchEnsemble& e, const OperatorExpression& expr);
double expectation(const StateVector& s, const PauliString& p);

}  // namespace mbqc
