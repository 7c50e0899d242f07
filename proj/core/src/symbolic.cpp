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

#include "mbqc/symbolic.hpp"

#include <cmath>
#include <sstream>

#include "mbqc/error.hpp"

namespace mbqc {

GaussianInteger GaussianInteger::power_of_i(Phase p) {
  switch (p.log_i()) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

namespace {

void trim(TrigPolynomial::Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

}  // namespace

void TrigPolynomial::add_monomial(Monomial m, GaussianInteger c) {
  if (c.is_zero()) return;
  // cos^2 -> 1 - sin^2 on the first symbol that needs it; recursion finishes the rest.
  for (std::size_t k = 0; k < m.size(); k += 2) {
    if (m[k] >= 2) {
      Monomial a = m;
      a[k] -= 2;
      Monomial b = a;
      if (b.size() < k + 2) b.resize(k + 2, 0);
      b[k + 1] += 2;
      trim(a);
      trim(b);
      add_monomial(std::move(a), c);
      add_monomial(std::move(b), -c);
      return;
    }
  }
  trim(m);
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TrigPolynomial TrigPolynomial::constant(GaussianInteger c) {
  TrigPolynomial p;
  p.add_monomial({}, c);
  return p;
}

TrigPolynomial TrigPolynomial::cos_of(std::size_t symbol) {
  Monomial m(2 * symbol + 1, 0);
  m[2 * symbol] = 1;
  TrigPolynomial p;
  p.add_monomial(std::move(m), {1, 0});
  return p;
}

TrigPolynomial TrigPolynomial::sin_of(std::size_t symbol) {
  Monomial m(2 * symbol + 2, 0);
  m[2 * symbol + 1] = 1;
  TrigPolynomial p;
  p.add_monomial(std::move(m), {1, 0});
  return p;
}

bool TrigPolynomial::is_real() const {
  for (const auto& [m, c] : terms_) {
    if (c.im != 0) return false;
  }
  return true;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& o) const {
  TrigPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_monomial(m, c);
  return r;
}

TrigPolynomial TrigPolynomial::operator-(const TrigPolynomial& o) const { return *this + (-o); }

TrigPolynomial TrigPolynomial::operator-() const {
  TrigPolynomial r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

TrigPolynomial TrigPolynomial::operator*(const TrigPolynomial& o) const {
  TrigPolynomial r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m(std::max(ma.size(), mb.size()), 0);
      for (std::size_t k = 0; k < ma.size(); ++k) m[k] += ma[k];
      for (std::size_t k = 0; k < mb.size(); ++k) m[k] += mb[k];
      r.add_monomial(std::move(m), ca * cb);
    }
  }
  return r;
}

std::complex<double> TrigPolynomial::evaluate(std::span<const double> angles) const {
  std::complex<double> total = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = 1.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      const std::size_t symbol = k / 2;
      if (symbol >= angles.size()) {
        throw DimensionError("angle symbol " + std::to_string(symbol) + " has no value");
      }
      const double base = (k % 2 == 0) ? std::cos(angles[symbol]) : std::sin(angles[symbol]);
      v *= std::pow(base, m[k]);
    }
    total += std::complex<double>(static_cast<double>(c.re), static_cast<double>(c.im)) * v;
  }
  return total;
}

std::string TrigPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.re;
    if (c.im != 0) os << (c.im < 0 ? "-" : "+") << std::llabs(c.im) << "i";
    os << ")";
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      os << "*" << ((k % 2 == 0) ? "cos" : "sin") << "(t" << k / 2 << ")";
      if (m[k] > 1) os << "^" << int(m[k]);
    }
  }
  return os.str();
}

SymbolicExpression SymbolicExpression::from_pauli(const PauliString& p, const TrigPolynomial& coefficient) {
  SymbolicExpression e(p.size());
  e.add(p, coefficient);
  return e;
}

void SymbolicExpression::add(const PauliString& p, const TrigPolynomial& coefficient) {
  if (p.size() != n_) throw DimensionError("symbolic term on the wrong register size");
  TrigPolynomial c = coefficient * TrigPolynomial::constant(GaussianInteger::power_of_i(p.phase()));
  if (c.is_zero()) return;
  PauliString key = p.with_phase(Phase::plus_one());
  auto [it, inserted] = terms_.try_emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SymbolicExpression SymbolicExpression::operator+(const SymbolicExpression& o) const {
  if (o.n_ != n_) throw DimensionError("adding symbolic expressions on different registers");
  SymbolicExpression r = *this;
  for (const auto& [p, c] : o.terms_) r.add(p, c);
  return r;
}

SymbolicExpression SymbolicExpression::operator-(const SymbolicExpression& o) const {
  return *this + o.scaled(TrigPolynomial::constant(-1));
}

SymbolicExpression SymbolicExpression::operator*(const SymbolicExpression& o) const {
  if (o.n_ != n_) throw DimensionError("multiplying symbolic expressions on different registers");
  SymbolicExpression r(n_);
  for (const auto& [pa, ca] : terms_) {
    for (const auto& [pb, cb] : o.terms_) r.add(pa * pb, ca * cb);
  }
  return r;
}

SymbolicExpression SymbolicExpression::scaled(const TrigPolynomial& c) const {
  SymbolicExpression r(n_);
  for (const auto& [p, k] : terms_) r.add(p, k * c);
  return r;
}

bool SymbolicExpression::is_hermitian() const {
  for (const auto& [p, c] : terms_) {
    if (!c.is_real()) return false;
  }
  return true;
}

OperatorExpression SymbolicExpression::evaluate(std::span<const double> angles) const {
  if (!is_hermitian()) throw NumericalError("symbolic expression is not Hermitian: " + str());
  OperatorExpression out(n_);
  for (const auto& [p, c] : terms_) out.add(p, c.evaluate(angles).real());
  return out;
}

std::string SymbolicExpression::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << c.str() << "]" << p.sparse_str().substr(1);
  }
  return os.str();
}

}  // namespace mbqc
