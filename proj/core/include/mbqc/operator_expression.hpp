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
#include <span>
#include <string>
#include <vector>

#include "mbqc/pauli.hpp"

namespace mbqc {

struct PauliTerm {
  double coefficient = 0.0;
  PauliString op;  // phase always +1
};

/// Real-weighted sum of Hermitian Pauli strings on a fixed register.
///
/// Signs are absorbed into coefficients, so every stored operator has phase
/// +1 and terms are unique and sorted.  Terms whose coefficient is exactly
/// zero are dropped.
class OperatorExpression {
 public:
  OperatorExpression() = default;
  explicit OperatorExpression(std::size_t n) : n_(n) {}

  static OperatorExpression identity(std::size_t n, double coefficient = 1.0);
  /// Throws UnsupportedError for a non-Hermitian (phase +-i) string.
  static OperatorExpression from_pauli(const PauliString& p, double coefficient = 1.0);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const PauliString& p, double coefficient);
  /// Coefficient of the identity term (0 when absent).
  double identity_coefficient() const;
  /// The single term, when the expression is exactly +-1 times one string.
  bool is_single_pauli() const;

  OperatorExpression& operator+=(const OperatorExpression& rhs);
  OperatorExpression& operator-=(const OperatorExpression& rhs);
  OperatorExpression& operator*=(double s);
  friend OperatorExpression operator+(OperatorExpression a, const OperatorExpression& b) { return a += b; }
  friend OperatorExpression operator-(OperatorExpression a, const OperatorExpression& b) { return a -= b; }
  friend OperatorExpression operator*(OperatorExpression a, double s) { return a *= s; }
  friend OperatorExpression operator*(double s, OperatorExpression a) { return a *= s; }

  /// this (x) rhs, with rhs's qubits following this expression's.
  OperatorExpression tensor(const OperatorExpression& rhs) const;
  OperatorExpression embed(std::size_t n, std::span<const std::size_t> positions) const;

  /// Largest |coefficient difference| over the union of terms.
  double max_abs_difference(const OperatorExpression& o) const;

  /// "0.5*+XZ - 0.25*+YY", dense form per term.
  std::string str() const;

  bool operator==(const OperatorExpression&) const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

}  // namespace mbqc
