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

#include "mbqc/operator_expression.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mbqc/error.hpp"

namespace mbqc {

OperatorExpression OperatorExpression::identity(std::size_t n, double coefficient) {
  OperatorExpression e(n);
  e.add(PauliString(n), coefficient);
  return e;
}

OperatorExpression OperatorExpression::from_pauli(const PauliString& p, double coefficient) {
  OperatorExpression e(p.size());
  e.add(p, coefficient);
  return e;
}

void OperatorExpression::add(const PauliString& p, double coefficient) {
  if (p.size() != n_) {
    throw DimensionError("term on " + std::to_string(p.size()) + " qubits added to expression on " +
                         std::to_string(n_));
  }
  if (!p.is_hermitian()) {
    throw UnsupportedError("non-Hermitian Pauli term " + p.str() + " in real expression");
  }
  const double c = coefficient * p.phase().sign();
  PauliString key = p.with_phase(Phase::plus_one());
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const PauliTerm& t, const PauliString& k) { return t.op < k; });
  if (it != terms_.end() && it->op == key) {
    it->coefficient += c;
    if (it->coefficient == 0.0) terms_.erase(it);
  } else if (c != 0.0) {
    terms_.insert(it, PauliTerm{c, std::move(key)});
  }
}

double OperatorExpression::identity_coefficient() const {
  for (const auto& t : terms_) {
    if (t.op.is_identity_up_to_phase()) return t.coefficient;
  }
  return 0.0;
}

bool OperatorExpression::is_single_pauli() const {
  return terms_.size() == 1 && std::abs(terms_[0].coefficient) == 1.0;
}

OperatorExpression& OperatorExpression::operator+=(const OperatorExpression& rhs) {
  if (rhs.n_ != n_) throw DimensionError("adding expressions on different registers");
  for (const auto& t : rhs.terms_) add(t.op, t.coefficient);
  return *this;
}

OperatorExpression& OperatorExpression::operator-=(const OperatorExpression& rhs) {
  if (rhs.n_ != n_) throw DimensionError("subtracting expressions on different registers");
  for (const auto& t : rhs.terms_) add(t.op, -t.coefficient);
  return *this;
}

OperatorExpression& OperatorExpression::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= s;
  return *this;
}

OperatorExpression OperatorExpression::tensor(const OperatorExpression& rhs) const {
  const std::size_t n = n_ + rhs.n_;
  std::vector<std::size_t> left(n_), right(rhs.n_);
  for (std::size_t q = 0; q < n_; ++q) left[q] = q;
  for (std::size_t q = 0; q < rhs.n_; ++q) right[q] = n_ + q;
  OperatorExpression out(n);
  for (const auto& a : terms_) {
    PauliString pa = a.op.embed(n, left);
    for (const auto& b : rhs.terms_) {
      out.add(pa * b.op.embed(n, right), a.coefficient * b.coefficient);
    }
  }
  return out;
}

OperatorExpression OperatorExpression::embed(std::size_t n, std::span<const std::size_t> positions) const {
  OperatorExpression out(n);
  for (const auto& t : terms_) out.add(t.op.embed(n, positions), t.coefficient);
  return out;
}

double OperatorExpression::max_abs_difference(const OperatorExpression& o) const {
  OperatorExpression d = *this;
  d -= o;
  double worst = 0.0;
  for (const auto& t : d.terms_) worst = std::max(worst, std::abs(t.coefficient));
  return worst;
}

std::string OperatorExpression::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coefficient;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    os << std::abs(c) << "*" << t.op.str().substr(1);
    first = false;
  }
  return os.str();
}

bool OperatorExpression::operator==(const OperatorExpression& o) const {
  if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (!(terms_[k].op == o.terms_[k].op) || terms_[k].coefficient != o.terms_[k].coefficient) return false;
  }
  return true;
}

}  // namespace mbqc
