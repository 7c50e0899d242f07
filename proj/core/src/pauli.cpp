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

#include "mbqc/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>

#include "mbqc/error.hpp"

namespace mbqc {

namespace {

std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

// Parses a leading phase marker, returning the remaining text.
std::string_view take_phase(std::string_view text, Phase& phase) {
  phase = Phase::plus_one();
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    if (text[0] == '-') phase = Phase::minus_one();
    text.remove_prefix(1);
  }
  if (!text.empty() && text[0] == 'i') {
    phase *= Phase::plus_i();
    text.remove_prefix(1);
  }
  return text;
}

std::string phase_prefix(Phase p) {
  switch (p.log_i()) {
    case 0: return "+";
    case 1: return "+i";
    case 2: return "-";
    default: return "-i";
  }
}

void check_same_size(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw DimensionError("Pauli strings act on " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " qubits");
  }
}

}  // namespace

std::complex<double> Phase::value() const {
  switch (log_i_) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString::PauliString(std::size_t n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::from_str(std::string_view text) {
  Phase phase;
  text = take_phase(text, phase);
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    char c = text[q];
    if (c == '_') c = 'I';
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw ParseError("bad Pauli character '" + std::string(1, text[q]) + "' at position " +
                       std::to_string(q));
    }
    p.set(q, c);
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::from_sparse(std::string_view text, std::size_t n) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  Phase phase;
  text = take_phase(text, phase);
  PauliString p(n);
  std::vector<bool> seen(n, false);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "I") continue;
    char c = token[0];
    if (c != 'X' && c != 'Y' && c != 'Z' && c != 'I') {
      throw ParseError("bad sparse Pauli token '" + std::string(token) + "'");
    }
    std::size_t q = 0;
    auto [ptr, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), q);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.size() < 2) {
      throw ParseError("bad qubit index in sparse Pauli token '" + std::string(token) + "'");
    }
    if (q >= n) {
      throw DimensionError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) +
                           " qubits");
    }
    if (seen[q]) throw ParseError("qubit " + std::to_string(q) + " repeated in sparse Pauli");
    seen[q] = true;
    p.set(q, c);
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t q, char pauli) {
  if (q >= n) throw DimensionError("qubit " + std::to_string(q) + " out of range");
  PauliString p(n);
  p.set(q, pauli);
  return p;
}

char PauliString::at(std::size_t q) const {
  bool xb = x(q), zb = z(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliString::set(std::size_t q, char pauli) {
  if (q >= n_) throw DimensionError("qubit " + std::to_string(q) + " out of range");
  std::uint64_t bit = std::uint64_t{1} << (q & 63);
  std::size_t w = q >> 6;
  x_[w] &= ~bit;
  z_[w] &= ~bit;
  switch (pauli) {
    case 'I': break;
    case 'X': x_[w] |= bit; break;
    case 'Z': z_[w] |= bit; break;
    case 'Y':
      x_[w] |= bit;
      z_[w] |= bit;
      break;
    default: throw ParseError(std::string("bad Pauli '") + pauli + "'");
  }
}

PauliString PauliString::with_phase(Phase p) const {
  PauliString r = *this;
  r.phase_ = p;
  return r;
}

bool PauliString::is_identity_up_to_phase() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) total += std::popcount(x_[w] | z_[w]);
  return total;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_; ++q) {
    if (x(q) || z(q)) out.push_back(q);
  }
  return out;
}

bool PauliString::same_paulis(const PauliString& o) const {
  return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  check_same_size(*this, rhs);
  int log_i = phase_.log_i() + rhs.phase_.log_i();
  for (std::size_t w = 0; w < x_.size(); ++w) {
    const std::uint64_t x1 = x_[w], z1 = z_[w], x2 = rhs.x_[w], z2 = rhs.z_[w];
    // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
    const std::uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    const std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2);
    log_i += std::popcount(plus) - std::popcount(minus);
    x_[w] = x1 ^ x2;
    z_[w] = z1 ^ z2;
  }
  phase_ = Phase::from_log_i(log_i);
  return *this;
}

bool PauliString::commutes(const PauliString& o) const {
  check_same_size(*this, o);
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    acc ^= (x_[w] & o.z_[w]) ^ (z_[w] & o.x_[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

PauliString PauliString::embed(std::size_t n, std::span<const std::size_t> positions) const {
  if (positions.size() != n_) throw DimensionError("embedding needs one position per qubit");
  PauliString out(n);
  for (std::size_t q = 0; q < n_; ++q) {
    if (positions[q] >= n) throw DimensionError("embedding position out of range");
    if (out.at(positions[q]) != 'I') throw DimensionError("embedding positions must be distinct");
    out.set(positions[q], at(q));
  }
  out.phase_ = phase_;
  return out;
}

PauliString PauliString::restrict_to(std::span<const std::size_t> positions) const {
  PauliString out(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (positions[k] >= n_) throw DimensionError("restriction position out of range");
    out.set(k, at(positions[k]));
  }
  out.phase_ = phase_;
  return out;
}

std::string PauliString::str() const {
  std::string s = phase_prefix(phase_);
  s.reserve(s.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) s.push_back(at(q));
  return s;
}

std::string PauliString::sparse_str() const {
  std::string s = phase_prefix(phase_);
  bool any = false;
  for (std::size_t q = 0; q < n_; ++q) {
    char c = at(q);
    if (c == 'I') continue;
    if (any) s.push_back(' ');
    s.push_back(c);
    s += std::to_string(q);
    any = true;
  }
  if (!any) s.push_back('I');
  return s;
}

bool PauliString::operator<(const PauliString& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (x_ != o.x_) return x_ < o.x_;
  if (z_ != o.z_) return z_ < o.z_;
  return phase_.log_i() < o.phase_.log_i();
}

PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

bool commutes(const PauliString& p, const PauliString& q) { return p.commutes(q); }

CliffordGate CliffordGate::parse(std::string_view name, std::size_t q0, std::size_t q1) {
  static constexpr CliffordKind kinds[] = {CliffordKind::H, CliffordKind::S, CliffordKind::S_DAG,
                                           CliffordKind::X, CliffordKind::Y, CliffordKind::Z,
                                           CliffordKind::CZ, CliffordKind::CX};
  for (CliffordKind k : kinds) {
    if (name_of(k) == name) return {k, q0, q1};
  }
  throw UnsupportedError("unsupported Clifford gate '" + std::string(name) + "'");
}

std::string_view name_of(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::H: return "H";
    case CliffordKind::S: return "S";
    case CliffordKind::S_DAG: return "S_DAG";
    case CliffordKind::X: return "X";
    case CliffordKind::Y: return "Y";
    case CliffordKind::Z: return "Z";
    case CliffordKind::CZ: return "CZ";
    case CliffordKind::CX: return "CX";
  }
  return "?";
}

void conjugate_in_place(PauliString& p, const CliffordGate& gate) {
  const std::size_t n = p.size();
  if (gate.q0 >= n || (gate.two_qubit() && (gate.q1 >= n || gate.q1 == gate.q0))) {
    throw DimensionError("Clifford gate qubits out of range for " + std::to_string(n) + " qubits");
  }
  const int xa = p.x(gate.q0), za = p.z(gate.q0);
  auto put = [&p](std::size_t q, int xb, int zb) {
    p.set(q, xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
  };
  int flip = 0;  // number of factors of -1
  switch (gate.kind) {
    case CliffordKind::H:
      flip = xa & za;
      put(gate.q0, za, xa);
      break;
    case CliffordKind::S:
      flip = xa & za;
      put(gate.q0, xa, za ^ xa);
      break;
    case CliffordKind::S_DAG:
      flip = xa & (za ^ xa);
      put(gate.q0, xa, za ^ xa);
      break;
    case CliffordKind::X: flip = za; break;
    case CliffordKind::Y: flip = xa ^ za; break;
    case CliffordKind::Z: flip = xa; break;
    case CliffordKind::CZ: {
      const int xb = p.x(gate.q1), zb = p.z(gate.q1);
      flip = xa & xb & (za ^ zb);
      put(gate.q0, xa, za ^ xb);
      put(gate.q1, xb, zb ^ xa);
      break;
    }
    case CliffordKind::CX: {
      const int xt = p.x(gate.q1), zt = p.z(gate.q1);
      flip = xa & zt & (xt ^ za ^ 1);
      put(gate.q0, xa, za ^ zt);
      put(gate.q1, xt ^ xa, zt);
      break;
    }
  }
  if (flip) p.set_phase(p.phase() * Phase::minus_one());
}

PauliString conjugate_by_clifford(PauliString p, const CliffordGate& gate) {
  conjugate_in_place(p, gate);
  return p;
}

}  // namespace mbqc
