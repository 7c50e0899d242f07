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

#include "mbqc/density.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "mbqc/error.hpp"

namespace mbqc {

namespace {

constexpr std::size_t kMaxMatrixQubits = 10;

// Accumulates weight * Tr_rest |psi><psi| into rho.
void accumulate(DensityMatrix& rho, const StateVector& s, std::span<const std::size_t> qubits, double weight) {
  const std::size_t k = qubits.size();
  const std::size_t n = s.num_qubits();
  std::size_t reg_mask = 0;
  for (std::size_t q : qubits) {
    if (q >= n) throw DimensionError("register qubit " + std::to_string(q) + " out of range");
    if (reg_mask & (std::size_t{1} << q)) throw DimensionError("register qubits must be distinct");
    reg_mask |= std::size_t{1} << q;
  }
  const std::size_t local_dim = std::size_t{1} << k;
  // deposit[l]: global bits for local index l (position 0 most significant).
  std::vector<std::size_t> deposit(local_dim, 0);
  for (std::size_t l = 0; l < local_dim; ++l) {
    for (std::size_t pos = 0; pos < k; ++pos) {
      if ((l >> (k - 1 - pos)) & 1u) deposit[l] |= std::size_t{1} << qubits[pos];
    }
  }
  const auto amps = s.amplitudes();
  for (std::size_t rest = 0; rest < amps.size(); ++rest) {
    if (rest & reg_mask) continue;
    for (std::size_t a = 0; a < local_dim; ++a) {
      const Complex va = amps[rest | deposit[a]];
      if (va == Complex{}) continue;
      for (std::size_t b = 0; b < local_dim; ++b) {
        rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
            weight * va * std::conj(amps[rest | deposit[b]]);
      }
    }
  }
}

}  // namespace

DensityMatrix reduced_density(const StateVector& s, std::span<const std::size_t> qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  accumulate(rho, s, qubits, 1.0 / s.norm_squared());
  return rho;
}

DensityMatrix reduced_density(const BranchEnsemble& e, std::span<const std::size_t> qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for (const auto& m : e.members()) accumulate(rho, m.state, qubits, m.weight / m.state.norm_squared());
  return rho;
}

DensityMatrix reduced_two_qubit_density(const BranchEnsemble& e, std::size_t a, std::size_t b) {
  if (a == b) throw DimensionError("two-qubit density needs distinct qubits");
  const std::size_t qubits[] = {a, b};
  return reduced_density(e, qubits);
}

DensityCheck inspect_density(const DensityMatrix& rho) {
  DensityCheck c{};
  c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  const DensityMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = solver.eigenvalues().minCoeff();
  return c;
}

void check_density(const DensityMatrix& rho, double tol, double eigen_floor) {
  const DensityCheck c = inspect_density(rho);
  if (c.hermiticity_error > tol) {
    throw NumericalError("density matrix not Hermitian (error " + std::to_string(c.hermiticity_error) + ")");
  }
  if (c.trace_error > tol) {
    throw NumericalError("density matrix trace off by " + std::to_string(c.trace_error));
  }
  if (c.min_eigenvalue < -eigen_floor) {
    throw NumericalError("density matrix has negative eigenvalue " + std::to_string(c.min_eigenvalue));
  }
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  if (p.size() > kMaxMatrixQubits) throw ResourceLimitError("Pauli matrix too large");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = 0; q < p.size(); ++q) {
    Eigen::Matrix2cd s;
    switch (p.at(q)) {
      case 'X': s << 0, 1, 1, 0; break;
      case 'Y': s << 0, Complex(0, -1), Complex(0, 1), 0; break;
      case 'Z': s << 1, 0, 0, -1; break;
      default: s = Eigen::Matrix2cd::Identity(); break;
    }
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    }
    m = std::move(next);
  }
  return m * p.phase().value();
}

Eigen::MatrixXcd to_matrix(const OperatorExpression& e) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << e.num_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : e.terms()) m += t.coefficient * pauli_matrix(t.op);
  return m;
}

OperatorExpression pauli_decompose(const Eigen::MatrixXcd& m, double tol) {
  const auto dim = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols() || dim == 0 || (dim & (dim - 1)) != 0) {
    throw DimensionError("Pauli decomposition needs a square power-of-two matrix");
  }
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  OperatorExpression out(n);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  const std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(q, letters[(code >> (2 * q)) & 3u]);
    const Complex c = (pauli_matrix(p) * m).trace() / static_cast<double>(dim);
    if (std::abs(c.imag()) > tol) {
      throw NumericalError("matrix is not Hermitian: coefficient of " + p.str() + " is complex");
    }
    if (std::abs(c.real()) > tol) out.add(p, c.real());
  }
  return out;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const DensityMatrix d = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(d, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace mbqc
