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

// Independent reference implementations used only by the tests: explicit
// Kronecker products and closed-form cluster amplitudes.
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "mbqc/lattice.hpp"
#include "mbqc/pauli.hpp"
#include "mbqc/state_vector.hpp"

namespace mbqc::testing {

using Cd = std::complex<double>;

inline Eigen::Matrix2cd single_pauli(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Cd(0, -1), Cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

// Qubit 0 is the leftmost Kronecker factor.
inline Eigen::MatrixXcd kron_letters(const std::string& letters, Cd phase = 1.0) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1) * phase;
  for (char c : letters) {
    const Eigen::Matrix2cd s = single_pauli(c);
    Eigen::MatrixXcd fixed(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index col = 0; col < m.cols(); ++col) fixed.block(r * 2, col * 2, 2, 2) = m(r, col) * s;
    m = fixed;
  }
  return m;
}

inline std::string letters_of(const PauliString& p) {
  std::string s;
  for (std::size_t q = 0; q < p.size(); ++q) s.push_back(p.at(q));
  return s;
}

inline Eigen::MatrixXcd oracle_matrix(const PauliString& p) { return kron_letters(letters_of(p), p.phase().value()); }

inline PauliString random_pauli(std::size_t n, std::mt19937_64& rng, bool hermitian_only = false) {
  static constexpr char kLetters[] = "IXYZ";
  std::string s;
  const int k = static_cast<int>(rng() % 4);
  if (hermitian_only) {
    s = (k & 1) ? "-" : "+";
  } else {
    static constexpr const char* kSigns[] = {"+", "+i", "-", "-i"};
    s = kSigns[k];
  }
  for (std::size_t q = 0; q < n; ++q) s.push_back(kLetters[rng() % 4]);
  return PauliString::from_str(s);
}

// Converts a state vector (qubit q = bit q) into Kronecker order (qubit 0 most significant).
inline Eigen::VectorXcd kron_order(const StateVector& s) {
  const std::size_t n = s.num_qubits();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dimension()));
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    std::size_t k = 0;
    for (std::size_t q = 0; q < n; ++q)
      if ((i >> q) & 1u) k |= std::size_t{1} << (n - 1 - q);
    v(static_cast<Eigen::Index>(k)) = s[i];
  }
  return v;
}

// Graph state amplitudes: 2^{-n/2} (-1)^{sum over edges of b_u b_v}, indexed like StateVector.
inline std::vector<Cd> cluster_amplitudes(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<Cd> a(std::size_t{1} << n);
  const double norm = std::pow(2.0, -0.5 * static_cast<double>(n));
  for (std::size_t b = 0; b < a.size(); ++b) {
    int parity = 0;
    for (const auto& [u, v] : g.edges()) parity ^= static_cast<int>(((b >> u) & 1u) & ((b >> v) & 1u));
    a[b] = parity ? -norm : norm;
  }
  return a;
}

inline double oracle_expectation(const StateVector& s, const PauliString& p) {
  const Eigen::VectorXcd v = kron_order(s);
  return (v.adjoint() * oracle_matrix(p) * v)(0, 0).real() / v.squaredNorm();
}

}  // namespace mbqc::testing
