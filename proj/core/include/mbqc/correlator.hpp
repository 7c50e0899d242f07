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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mbqc/density.hpp"
#include "mbqc/gate_plan.hpp"
#include "mbqc/operator_expression.hpp"
#include "mbqc/pauli.hpp"
#include "mbqc/state_vector.hpp"
#include "mbqc/symbolic.hpp"
#include "mbqc/tableau.hpp"

namespace mbqc {

// ---------------------------------------------------------------------------
// Post-measurement path: enumerate every outcome branch, correct, average.
// ---------------------------------------------------------------------------

/// Visits each non-negligible corrected branch with its probability; the
/// state passed is unnormalized with squared norm equal to that probability.
/// Branches are visited in a fixed depth-first order (+1 before -1).
using BranchVisitor = std::function<void(const OutcomeRecord&, double probability, const StateVector& corrected)>;
void for_each_corrected_branch(const StateVector& rho0, const GatePlan& plan, const BranchVisitor& visit);

/// Full-register mixture of corrected branches (normalized members).
BranchEnsemble corrected_branch_ensemble(const StateVector& rho0, const GatePlan& plan);
BranchEnsemble corrected_branch_ensemble(const BranchEnsemble& rho0, const GatePlan& plan);

/// Sum over corrected branches of the resource-register reduced state
/// (register position 0 most significant).
DensityMatrix corrected_resource_density(const StateVector& rho0, const GatePlan& plan);
DensityMatrix corrected_resource_density(const BranchEnsemble& rho0, const GatePlan& plan);

/// <A (x) B> after measurement and correction.  A acts on the inputs (one
/// letter per input), B on the outputs.
double post_measurement_expectation(const StateVector& rho0, const GatePlan& plan, const PauliString& a,
                                    const PauliString& b);
double post_measurement_expectation(const BranchEnsemble& rho0, const GatePlan& plan, const PauliString& a,
                                    const PauliString& b);
/// Tableau backend; throws UnsupportedError for plans with XEta steps.
double post_measurement_expectation(const Tableau& rho0, const GatePlan& plan, const PauliString& a,
                                    const PauliString& b);

/// Observables on the resource register (inputs then outputs), evaluated in
/// one pass over the branches.
std::vector<double> post_measurement_expectations(const StateVector& rho0, const GatePlan& plan,
                                                  std::span<const OperatorExpression> observables);
std::vector<double> post_measurement_expectations(const BranchEnsemble& rho0, const GatePlan& plan,
                                                  std::span<const OperatorExpression> observables);
std::vector<double> post_measurement_expectations(const Tableau& rho0, const GatePlan& plan,
                                                  std::span<const OperatorExpression> observables);

// ---------------------------------------------------------------------------
// Pre-measurement path: the outcome-free operator whose expectation on the
// unmeasured state equals the corrected correlation.
// ---------------------------------------------------------------------------

/// Exact form; angle symbol k is the k-th XEta step's angle.
SymbolicExpression derive_symbolic(const GatePlan& plan, const PauliString& a, const PauliString& b);
/// Linear extension to a symbolic resource-register observable.
SymbolicExpression derive_symbolic(const GatePlan& plan, const SymbolicExpression& resource_observable);

OperatorExpression derive_pre_measurement_expression(const GatePlan& plan, const PauliString& a, const PauliString& b);
OperatorExpression derive_pre_measurement_expression(const GatePlan& plan, const OperatorExpression& resource_observable);

double pre_measurement_expectation(const StateVector& rho0, const OperatorExpression& expr);
double pre_measurement_expectation(const BranchEnsemble& rho0, const OperatorExpression& expr);
double pre_measurement_expectation(const Tableau& rho0, const OperatorExpression& expr);

/// Splits a resource-register string into its input and output parts.
std::pair<PauliString, PauliString> split_resource_pauli(const GatePlan& plan, const PauliString& resource);

// ---------------------------------------------------------------------------
// Cluster-stabilizer products.
// ---------------------------------------------------------------------------

/// coefficient * remainder * prod_{a in sites} K_a.
struct StabilizerMonomial {
  TrigPolynomial coefficient;
  PauliString remainder;  // phase +1; identity when the term is a pure K product
  std::vector<std::size_t> sites;
};

struct StabilizerProductForm {
  std::size_t num_qubits = 0;
  std::vector<StabilizerMonomial> monomials;

  /// Multiplies out every K product exactly.
  SymbolicExpression expand(const Graph& g) const;
  bool pure_stabilizer() const;
  std::string str() const;
};

/// Rewrites each term as remainder * prod K_a, choosing among K products
/// that commute with the term the one with the lightest remainder.
StabilizerProductForm decompose_into_stabilizers(const Graph& g, const SymbolicExpression& expr);
StabilizerProductForm stabilizer_product_form(const GatePlan& plan, const PauliString& a, const PauliString& b);
StabilizerProductForm stabilizer_product_form(const GatePlan& plan, const SymbolicExpression& resource_observable);

// ---------------------------------------------------------------------------
// Resource characterisation.
// ---------------------------------------------------------------------------

/// All 4^r resource-register Pauli strings in lexicographic I < X < Y < Z order.
std::vector<PauliString> resource_pauli_basis(std::size_t r);

/// rho = 2^-r sum_P <P> P over the resource register; register position 0
/// is the most significant bit.  Throws NumericalError when the
/// reconstruction is not a density matrix within tolerance.
DensityMatrix resource_tomography(const StateVector& rho0, const GatePlan& plan);
DensityMatrix resource_tomography(const BranchEnsemble& rho0, const GatePlan& plan);
DensityMatrix resource_tomography(const Tableau& rho0, const GatePlan& plan);

/// Unique joint +1 eigenvector of the ideal stabilizers (position 0 most
/// significant), normalized with its first significant amplitude real and
/// positive.  Built by projecting a fixed generic seed vector; if that is
/// annihilated, computational basis vectors are tried in order.
Eigen::VectorXcd ideal_resource_state(const GatePlan& plan);

/// <psi_ideal| rho |psi_ideal>, cross-checked against the stabilizer
/// average 2^-r sum over subsets of <prod S>.  Throws NumericalError if the
/// two differ by more than 1e-10.
double gate_fidelity(const DensityMatrix& rho, const GatePlan& plan);

}  // namespace mbqc
