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

#include <Eigen/Dense>

#include "mbqc/operator_expression.hpp"
#include "mbqc/pauli.hpp"
#include "mbqc/state_vector.hpp"

namespace mbqc {

/// Density matrix over a small register.  Register position 0 is the most
/// significant index bit, matching kron(sigma_0, sigma_1, ...).
using DensityMatrix = Eigen::MatrixXcd;

/// Partial trace of |psi><psi| / <psi|psi> onto the listed qubits.
DensityMatrix reduced_density(const StateVector& s, std::span<const std::size_t> qubits);
DensityMatrix reduced_density(const BranchEnsemble& e, std::span<const std::size_t> qubits);
/// 4x4 density of qubits (a, b); a is the most significant index bit.
DensityMatrix reduced_two_qubit_density(const BranchEnsemble& e, std::size_t a, std::size_t b);

struct DensityCheck {
  double hermiticity_error;
  double trace_error;
  double min_eigenvalue;
};

DensityCheck inspect_density(const DensityMatrix& rho);
/// Throws NumericalError unless Hermitian and unit-trace within tol and
/// every eigenvalue is >= -eigen_floor.
void check_density(const DensityMatrix& rho, double tol, double eigen_floor);

/// Dense matrix of a Pauli string (at most 10 qubits).
Eigen::MatrixXcd pauli_matrix(const PauliString& p);
Eigen::MatrixXcd to_matrix(const OperatorExpression& e);
/// Expands a Hermitian matrix in the Pauli basis; throws NumericalError if an
/// expansion coefficient has an imaginary part above tol.  Coefficients with
/// modulus below tol are dropped.
OperatorExpression pauli_decompose(const Eigen::MatrixXcd& m, double tol = 1e-12);

/// Half the trace norm of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace mbqc
