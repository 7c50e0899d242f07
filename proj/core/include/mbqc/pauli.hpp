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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbqc {

/// A fourth root of unity, stored exactly as a power of i.
class Phase {
 public:
  constexpr Phase() = default;
  static constexpr Phase from_log_i(int k) { return Phase(static_cast<std::uint8_t>(((k % 4) + 4) % 4)); }

  static constexpr Phase plus_one() { return Phase(0); }
  static constexpr Phase plus_i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  /// Exponent k of i^k, in [0, 4).
  constexpr int log_i() const { return log_i_; }
  constexpr bool is_real() const { return (log_i_ & 1) == 0; }
  /// +1 or -1; only meaningful when is_real().
  constexpr int sign() const { return log_i_ == 0 ? 1 : -1; }
  std::complex<double> value() const;

  constexpr Phase operator*(Phase o) const { return from_log_i(log_i_ + o.log_i_); }
  constexpr Phase& operator*=(Phase o) { return *this = *this * o; }
  constexpr Phase inverse() const { return from_log_i(-log_i_); }
  constexpr bool operator==(const Phase&) const = default;

 private:
  constexpr explicit Phase(std::uint8_t k) : log_i_(k) {}
  std::uint8_t log_i_ = 0;
};

/// Phased n-qubit Pauli operator in symplectic form.
///
/// The operator is phase * prod_q sigma_q where sigma_q is I, X, Z, or Y
/// according to the (x, z) bits of qubit q: (0,0)=I, (1,0)=X, (0,1)=Z,
/// (1,1)=Y.  Y is the Hermitian Pauli matrix, i.e. Y = iXZ; the factor i is
/// never folded into the bits, so a string is Hermitian exactly when its
/// phase is +1 or -1.  Qubit q lives in bit (q % 64) of word (q / 64); bits
/// above n are always zero so equal operators compare equal.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(std::size_t n);

  /// Dense form: optional sign ("+", "-", "+i", "-i", "i") followed by one
  /// character per qubit from "IXYZ_".
  static PauliString from_str(std::string_view text);
  /// Sparse form: optional sign followed by tokens like "X0 Z2 Y13"; "I"
  /// alone (or no tokens) is the identity.
  static PauliString from_sparse(std::string_view text, std::size_t n);
  /// Single Pauli ('I', 'X', 'Y', 'Z') on qubit q.
  static PauliString single(std::size_t n, std::size_t q, char pauli);

  std::size_t size() const { return n_; }
  std::size_t num_words() const { return x_.size(); }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }
  /// 'I', 'X', 'Y' or 'Z'.
  char at(std::size_t q) const;
  void set(std::size_t q, char pauli);

  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }
  PauliString with_phase(Phase p) const;

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  bool is_hermitian() const { return phase_.is_real(); }
  /// True when every qubit carries I (phase ignored).
  bool is_identity_up_to_phase() const;
  std::size_t weight() const;
  /// Qubits carrying a non-identity factor, ascending.
  std::vector<std::size_t> support() const;
  /// Masks equal (phase ignored).
  bool same_paulis(const PauliString& o) const;

  PauliString& operator*=(const PauliString& rhs);
  friend PauliString operator*(PauliString lhs, const PauliString& rhs) { return lhs *= rhs; }
  PauliString operator-() const { return with_phase(phase_ * Phase::minus_one()); }

  bool commutes(const PauliString& o) const;

  /// Copies factors onto a larger register: factor q lands on qubit
  /// positions[q].  Phase is kept.
  PauliString embed(std::size_t n, std::span<const std::size_t> positions) const;
  /// Inverse of embed: picks out the factors at positions (phase kept).
  PauliString restrict_to(std::span<const std::size_t> positions) const;

  std::string str() const;
  std::string sparse_str() const;

  bool operator==(const PauliString&) const = default;
  /// Orders by masks first, then phase; used for canonical term maps.
  bool operator<(const PauliString& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  Phase phase_;
};

/// Exact operator product p * q.
PauliString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

enum class CliffordKind { H, S, S_DAG, X, Y, Z, CZ, CX };

struct CliffordGate {
  CliffordKind kind;
  std::size_t q0 = 0;
  std::size_t q1 = 0;  // second qubit for CZ / CX (target for CX)

  static CliffordGate h(std::size_t q) { return {CliffordKind::H, q, 0}; }
  static CliffordGate s(std::size_t q) { return {CliffordKind::S, q, 0}; }
  static CliffordGate cz(std::size_t a, std::size_t b) { return {CliffordKind::CZ, a, b}; }
  static CliffordGate cx(std::size_t c, std::size_t t) { return {CliffordKind::CX, c, t}; }
  /// "H", "S", "S_DAG", "X", "Y", "Z", "CZ", "CX"; throws UnsupportedError otherwise.
  static CliffordGate parse(std::string_view name, std::size_t q0, std::size_t q1 = 0);
  bool two_qubit() const { return kind == CliffordKind::CZ || kind == CliffordKind::CX; }
};

std::string_view name_of(CliffordKind kind);

/// In-place U p U^dagger.
void conjugate_in_place(PauliString& p, const CliffordGate& gate);
/// Returns U p U^dagger.
PauliString conjugate_by_clifford(PauliString p, const CliffordGate& gate);

}  // namespace mbqc
