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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mbqc/pauli.hpp"

namespace mbqc {

/// Pure stabilizer state on n qubits, stored as n stabilizer generators and
/// their n destabilizer partners.
///
/// Invariants (checked by validate()): stabilizers commute pairwise and are
/// Hermitian; destabilizer[i] anticommutes with stabilizer[i] and commutes
/// with every other stabilizer; destabilizers commute pairwise.  Together
/// these imply full symplectic rank.
class Tableau {
 public:
  Tableau() = default;
  /// |0...0>: stabilizers Z_q, destabilizers X_q.
  explicit Tableau(std::size_t n);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliString>& stabilizers() const { return stabilizers_; }
  const std::vector<PauliString>& destabilizers() const { return destabilizers_; }

  void apply(const CliffordGate& gate);

  struct Outcome {
    int value;           // +1 or -1
    bool deterministic;  // state was already an eigenstate of the observable
  };

  /// Measures a Hermitian Pauli observable, forcing the outcome.  Throws
  /// ContradictionError if the forced value disagrees with a deterministic
  /// outcome.
  Outcome measure(const PauliString& observable, int forced_outcome);
  /// Measures with a fair coin from rng when the outcome is random.
  Outcome measure(const PauliString& observable, std::mt19937_64& rng);

  /// +1/-1 when +-observable is in the stabilizer group, 0 otherwise.
  int expectation(const PauliString& observable) const;

  /// Throws NumericalError naming the first violated invariant.
  void validate() const;

  /// "# stabilizers" / "# destabilizers" sections, one signed dense string per line.
  std::string to_text() const;
  static Tableau from_text(std::string_view text);

  bool operator==(const Tableau&) const = default;

 private:
  void check_observable(const PauliString& observable) const;
  int anticommuting_stabilizer(const PauliString& observable) const;
  int deterministic_sign(const PauliString& observable) const;
  Outcome collapse(const PauliString& observable, std::size_t pivot, int outcome);

  std::size_t n_ = 0;
  std::vector<PauliString> stabilizers_;
  std::vector<PauliString> destabilizers_;
};

struct MeasurementResult {
  int outcome;
  Tableau posterior;
  bool deterministic;
};

Tableau apply_clifford(Tableau t, const CliffordGate& gate);
MeasurementResult measure_pauli(Tableau t, const PauliString& observable, int forced_outcome);
MeasurementResult measure_pauli(Tableau t, const PauliString& observable, std::mt19937_64& rng);
int expectation_pauli(const Tableau& t, const PauliString& observable);

}  // namespace mbqc
