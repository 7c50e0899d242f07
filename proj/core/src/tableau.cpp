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

#include "mbqc/tableau.hpp"

#include <sstream>

#include "mbqc/error.hpp"

namespace mbqc {

Tableau::Tableau(std::size_t n) : n_(n) {
  stabilizers_.reserve(n);
  destabilizers_.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    stabilizers_.push_back(PauliString::single(n, q, 'Z'));
    destabilizers_.push_back(PauliString::single(n, q, 'X'));
  }
}

void Tableau::apply(const CliffordGate& gate) {
  for (auto& s : stabilizers_) conjugate_in_place(s, gate);
  for (auto& d : destabilizers_) conjugate_in_place(d, gate);
}

void Tableau::check_observable(const PauliString& observable) const {
  if (observable.size() != n_) {
    throw DimensionError("observable on " + std::to_string(observable.size()) + " qubits, tableau has " +
                         std::to_string(n_));
  }
  if (!observable.is_hermitian()) {
    throw UnsupportedError("cannot measure non-Hermitian " + observable.str());
  }
}

int Tableau::anticommuting_stabilizer(const PauliString& observable) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stabilizers_[i].commutes(observable)) return static_cast<int>(i);
  }
  return -1;
}

// observable commutes with every stabilizer, so it equals +-prod S_i over the
// i whose destabilizer anticommutes with it.
int Tableau::deterministic_sign(const PauliString& observable) const {
  PauliString product(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!destabilizers_[i].commutes(observable)) product *= stabilizers_[i];
  }
  if (!product.same_paulis(observable)) {
    throw NumericalError("tableau lost full rank: " + observable.str() + " not generated");
  }
  return (product.phase() * observable.phase().inverse()).sign();
}

Tableau::Outcome Tableau::collapse(const PauliString& observable, std::size_t pivot, int outcome) {
  const PauliString pivot_row = stabilizers_[pivot];
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != pivot && !stabilizers_[i].commutes(observable)) stabilizers_[i] *= pivot_row;
    if (i != pivot && !destabilizers_[i].commutes(observable)) destabilizers_[i] *= pivot_row;
  }
  destabilizers_[pivot] = pivot_row;
  stabilizers_[pivot] = outcome > 0 ? observable : -observable;
  return {outcome, false};
}

Tableau::Outcome Tableau::measure(const PauliString& observable, int forced_outcome) {
  check_observable(observable);
  if (forced_outcome != 1 && forced_outcome != -1) {
    throw UnsupportedError("forced outcome must be +1 or -1");
  }
  const int pivot = anticommuting_stabilizer(observable);
  if (pivot < 0) {
    const int sign = deterministic_sign(observable);
    if (sign != forced_outcome) {
      throw ContradictionError("forced outcome " + std::to_string(forced_outcome) + " for " +
                               observable.str() + " contradicts deterministic " + std::to_string(sign));
    }
    return {sign, true};
  }
  return collapse(observable, static_cast<std::size_t>(pivot), forced_outcome);
}

Tableau::Outcome Tableau::measure(const PauliString& observable, std::mt19937_64& rng) {
  check_observable(observable);
  const int pivot = anticommuting_stabilizer(observable);
  if (pivot < 0) return {deterministic_sign(observable), true};
  const int outcome = (rng() & 1u) ? -1 : 1;
  return collapse(observable, static_cast<std::size_t>(pivot), outcome);
}

int Tableau::expectation(const PauliString& observable) const {
  check_observable(observable);
  if (anticommuting_stabilizer(observable) >= 0) return 0;
  return deterministic_sign(observable);
}

void Tableau::validate() const {
  if (stabilizers_.size() != n_ || destabilizers_.size() != n_) {
    throw NumericalError("tableau must hold n stabilizers and n destabilizers");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stabilizers_[i].is_hermitian()) throw NumericalError("stabilizer " + std::to_string(i) + " not Hermitian");
    for (std::size_t j = 0; j < n_; ++j) {
      const bool s_d = stabilizers_[i].commutes(destabilizers_[j]);
      if ((i == j) == s_d) {
        throw NumericalError("stabilizer " + std::to_string(i) + " / destabilizer " + std::to_string(j) +
                             (i == j ? " must anticommute" : " must commute"));
      }
      if (j > i && !stabilizers_[i].commutes(stabilizers_[j])) {
        throw NumericalError("stabilizers " + std::to_string(i) + " and " + std::to_string(j) + " anticommute");
      }
      if (j > i && !destabilizers_[i].commutes(destabilizers_[j])) {
        throw NumericalError("destabilizers " + std::to_string(i) + " and " + std::to_string(j) +
                             " anticommute");
      }
    }
  }
}

std::string Tableau::to_text() const {
  std::ostringstream os;
  os << "# stabilizers\n";
  for (const auto& s : stabilizers_) os << s.str() << "\n";
  os << "# destabilizers\n";
  for (const auto& d : destabilizers_) os << d.str() << "\n";
  return os.str();
}

Tableau Tableau::from_text(std::string_view text) {
  std::vector<PauliString> stabs, destabs;
  std::vector<PauliString>* section = nullptr;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty()) continue;
    if (line == "# stabilizers") {
      section = &stabs;
    } else if (line == "# destabilizers") {
      section = &destabs;
    } else if (line[0] == '#') {
      continue;
    } else {
      if (!section) throw ParseError("line " + std::to_string(line_no) + ": Pauli string before section marker");
      section->push_back(PauliString::from_str(line));
    }
  }
  const std::size_t n = stabs.size();
  if (destabs.size() != n) throw ParseError("stabilizer and destabilizer counts differ");
  Tableau t;
  t.n_ = n;
  for (const auto& p : stabs) {
    if (p.size() != n) throw ParseError("stabilizer width does not match generator count");
  }
  for (const auto& p : destabs) {
    if (p.size() != n) throw ParseError("destabilizer width does not match generator count");
  }
  t.stabilizers_ = std::move(stabs);
  t.destabilizers_ = std::move(destabs);
  t.validate();
  return t;
}

Tableau apply_clifford(Tableau t, const CliffordGate& gate) {
  t.apply(gate);
  return t;
}

MeasurementResult measure_pauli(Tableau t, const PauliString& observable, int forced_outcome) {
  auto r = t.measure(observable, forced_outcome);
  return {r.value, std::move(t), r.deterministic};
}

MeasurementResult measure_pauli(Tableau t, const PauliString& observable, std::mt19937_64& rng) {
  auto r = t.measure(observable, rng);
  return {r.value, std::move(t), r.deterministic};
}

int expectation_pauli(const Tableau& t, const PauliString& observable) { return t.expectation(observable); }

}  // namespace mbqc
