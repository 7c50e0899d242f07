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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mbqc/operator_expression.hpp"
#include "mbqc/pauli.hpp"

namespace mbqc {

struct GaussianInteger {
  std::int64_t re = 0;
  std::int64_t im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianInteger operator+(GaussianInteger o) const { return {re + o.re, im + o.im}; }
  GaussianInteger operator-(GaussianInteger o) const { return {re - o.re, im - o.im}; }
  GaussianInteger operator-() const { return {-re, -im}; }
  GaussianInteger operator*(GaussianInteger o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const GaussianInteger&) const = default;
  static GaussianInteger power_of_i(Phase p);
};

/// Polynomial in cos(theta_k), sin(theta_k) of numbered angle symbols with
/// Gaussian-integer coefficients.
///
/// Kept canonical by rewriting cos^2 = 1 - sin^2, so two polynomials are
/// equal as functions exactly when they compare equal.
class TrigPolynomial {
 public:
  /// Exponents laid out as (cos_0, sin_0, cos_1, sin_1, ...), trailing zeros trimmed.
  using Monomial = std::vector<std::uint8_t>;

  TrigPolynomial() = default;
  static TrigPolynomial constant(std::int64_t c) { return constant(GaussianInteger{c, 0}); }
  static TrigPolynomial constant(GaussianInteger c);
  static TrigPolynomial cos_of(std::size_t symbol);
  static TrigPolynomial sin_of(std::size_t symbol);

  bool is_zero() const { return terms_.empty(); }
  bool is_real() const;
  const std::map<Monomial, GaussianInteger>& terms() const { return terms_; }

  TrigPolynomial operator+(const TrigPolynomial& o) const;
  TrigPolynomial operator-(const TrigPolynomial& o) const;
  TrigPolynomial operator-() const;
  TrigPolynomial operator*(const TrigPolynomial& o) const;
  TrigPolynomial& operator+=(const TrigPolynomial& o) { return *this = *this + o; }
  bool operator==(const TrigPolynomial&) const = default;

  std::complex<double> evaluate(std::span<const double> angles) const;
  std::string str() const;

 private:
  void add_monomial(Monomial m, GaussianInteger c);
  std::map<Monomial, GaussianInteger> terms_;
};

/// Exact Pauli-sum with TrigPolynomial coefficients.
///
/// Used wherever operator identities must hold with zero tolerance: the
/// measurement-independent strings and their cluster-stabilizer forms.
class SymbolicExpression {
 public:
  SymbolicExpression() = default;
  explicit SymbolicExpression(std::size_t n) : n_(n) {}
  static SymbolicExpression from_pauli(const PauliString& p,
                                       const TrigPolynomial& coefficient = TrigPolynomial::constant(1));

  std::size_t num_qubits() const { return n_; }
  const std::map<PauliString, TrigPolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coefficient * p; the phase of p is folded into the coefficient.
  void add(const PauliString& p, const TrigPolynomial& coefficient);

  SymbolicExpression operator+(const SymbolicExpression& o) const;
  SymbolicExpression operator-(const SymbolicExpression& o) const;
  /// Operator product (this first, then o).
  SymbolicExpression operator*(const SymbolicExpression& o) const;
  SymbolicExpression scaled(const TrigPolynomial& c) const;

  /// All coefficients real, so the operator is Hermitian.
  bool is_hermitian() const;
  /// Throws NumericalError if not Hermitian.
  OperatorExpression evaluate(std::span<const double> angles) const;

  bool operator==(const SymbolicExpression&) const = default;
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::map<PauliString, TrigPolynomial> terms_;
};

}  // namespace mbqc
