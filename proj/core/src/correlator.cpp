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

#include "mbqc/correlator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mbqc/error.hpp"

namespace mbqc {
namespace {

void require_register(const GatePlan& plan, std::size_t n) {
  if (n != plan.num_qubits()) {
    throw DimensionError("input state has " + std::to_string(n) + " qubits, plan '" + plan.label + "' needs " +
                         std::to_string(plan.num_qubits()));
  }
}

void require_support(const GatePlan& plan, const PauliString& a, const PauliString& b) {
  if (a.size() != plan.inputs.size() || b.size() != plan.outputs.size()) {
    throw DimensionError("A must act on the " + std::to_string(plan.inputs.size()) + " input qubit(s) and B on the " +
                         std::to_string(plan.outputs.size()) + " output qubit(s)");
  }
  if (!a.is_hermitian() || !b.is_hermitian()) throw UnsupportedError("correlation operators must be Hermitian");
}

OperatorExpression resource_product(const PauliString& a, const PauliString& b) {
  PauliString ab(a.size() + b.size());
  for (std::size_t q = 0; q < a.size(); ++q) ab.set(q, a.at(q));
  for (std::size_t q = 0; q < b.size(); ++q) ab.set(a.size() + q, b.at(q));
  ab.set_phase(a.phase() * b.phase());
  return OperatorExpression::from_pauli(ab);
}

std::vector<OperatorExpression> embed_all(const GatePlan& plan, std::span<const OperatorExpression> observables) {
  const auto reg = plan.resource_register();
  std::vector<OperatorExpression> out;
  out.reserve(observables.size());
  for (const auto& o : observables) {
    if (o.num_qubits() != reg.size()) throw DimensionError("observable must act on the resource register");
    out.push_back(o.embed(plan.num_qubits(), reg));
  }
  return out;
}


}  // namespace

void for_each_corrected_branch(const StateVector& rho0, const GatePlan& plan, const BranchVisitor& visit) {
  require_register(plan, rho0.num_qubits());
  const double norm0 = rho0.norm_squared();
  if (!(norm0 > 0.0)) throw NumericalError("input state has zero norm");
  OutcomeRecord record;

  std::function<void(std::size_t, StateVector)> descend = [&](std::size_t depth, StateVector s) {
    if (depth == plan.steps.size()) {
      s.apply_pauli(correction_for(plan, record));
      visit(record, s.norm_squared(), s);
      return;
    }
    const MeasurementStep& st = plan.steps[depth];
    const SingleQubitObservable obs = st.observable(record);
    for (int m : {1, -1}) {
      StateVector t = m == 1 ? s : std::move(s);
      project(t, obs, st.qubit, m);
      if (t.norm_squared() < kNegligibleProbability) continue;
      record.record(st.qubit, m);
      descend(depth + 1, std::move(t));
      record.pop_back();
    }
  };

  StateVector start = rho0;
  start *= Complex(1.0 / std::sqrt(norm0), 0.0);
  descend(0, std::move(start));
}

BranchEnsemble corrected_branch_ensemble(const StateVector& rho0, const GatePlan& plan) {
  BranchEnsemble out;
  for_each_corrected_branch(rho0, plan, [&](const OutcomeRecord&, double p, const StateVector& s) {
    StateVector t = s;
    t.normalize();
    out.add(p, std::move(t));
  });
  return out;
}

BranchEnsemble corrected_branch_ensemble(const BranchEnsemble& rho0, const GatePlan& plan) {
  BranchEnsemble out;
  for (const auto& member : rho0.members()) {
    for_each_corrected_branch(member.state, plan, [&](const OutcomeRecord&, double p, const StateVector& s) {
      StateVector t = s;
      t.normalize();
      out.add(member.weight * p, std::move(t));
    });
  }
  return out;
}

DensityMatrix corrected_resource_density(const StateVector& rho0, const GatePlan& plan) {
  const auto reg = plan.resource_register();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << reg.size());
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for_each_corrected_branch(rho0, plan, [&](const OutcomeRecord&, double p, const StateVector& s) {
    rho += p * reduced_density(s, reg);
  });
  return rho;
}

DensityMatrix corrected_resource_density(const BranchEnsemble& rho0, const GatePlan& plan) {
  rho0.validate();
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << plan.resource_register().size());
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for (const auto& member : rho0.members()) rho += member.weight * corrected_resource_density(member.state, plan);
  return rho;
}

namespace {

std::vector<double> expectations_on(const DensityMatrix& rho, std::span<const OperatorExpression> observables) {
  std::vector<double> out;
  out.reserve(observables.size());
  for (const auto& o : observables) {
    if (static_cast<Eigen::Index>(std::size_t{1} << o.num_qubits()) != rho.rows()) {
      throw DimensionError("observable must act on the resource register");
    }
    // Tr(rho P) summed term by term; each P is a signed permutation matrix.
    double v = 0.0;
    for (const auto& t : o.terms()) v += t.coefficient * (rho * pauli_matrix(t.op)).trace().real();
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<double> post_measurement_expectations(const StateVector& rho0, const GatePlan& plan,
                                                  std::span<const OperatorExpression> observables) {
  return expectations_on(corrected_resource_density(rho0, plan), observables);
}

std::vector<double> post_measurement_expectations(const BranchEnsemble& rho0, const GatePlan& plan,
                                                  std::span<const OperatorExpression> observables) {
  return expectations_on(corrected_resource_density(rho0, plan), observables);
}

std::vector<double> post_measurement_expectations(const Tableau& rho0, const GatePlan& plan,
                                                  std::span<const OperatorExpression> observables) {
  require_register(plan, rho0.num_qubits());
  if (plan.adaptive()) {
    throw UnsupportedError("plan '" + plan.label + "' measures rotated bases; the tableau backend handles Clifford plans only");
  }
  const auto embedded = embed_all(plan, observables);
  const std::size_t n = plan.num_qubits();
  std::vector<double> sums(embedded.size(), 0.0);
  OutcomeRecord record;

  std::function<void(std::size_t, Tableau&, double)> descend = [&](std::size_t depth, Tableau& t, double w) {
    if (depth == plan.steps.size()) {
      const PauliString u = correction_for(plan, record);
      for (std::size_t k = 0; k < embedded.size(); ++k) {
        for (const auto& term : embedded[k].terms()) {
          const int flip = u.commutes(term.op) ? 1 : -1;
          sums[k] += w * term.coefficient * flip * t.expectation(term.op);
        }
      }
      return;
    }
    const MeasurementStep& st = plan.steps[depth];
    const PauliString obs = PauliString::single(n, st.qubit, st.skeleton_pauli());
    if (const int e = t.expectation(obs); e != 0) {
      record.record(st.qubit, e);
      t.measure(obs, e);
      descend(depth + 1, t, w);
      record.pop_back();
      return;
    }
    for (int m : {1, -1}) {
      Tableau branch = t;
      branch.measure(obs, m);
      record.record(st.qubit, m);
      descend(depth + 1, branch, w / 2);
      record.pop_back();
    }
  };

  Tableau start = rho0;
  descend(0, start, 1.0);
  return sums;
}

double post_measurement_expectation(const StateVector& rho0, const GatePlan& plan, const PauliString& a,
                                    const PauliString& b) {
  require_support(plan, a, b);
  const OperatorExpression o = resource_product(a, b);
  return post_measurement_expectations(rho0, plan, std::span(&o, 1)).front();
}

double post_measurement_expectation(const BranchEnsemble& rho0, const GatePlan& plan, const PauliString& a,
                                    const PauliString& b) {
  require_support(plan, a, b);
  const OperatorExpression o = resource_product(a, b);
  return post_measurement_expectations(rho0, plan, std::span(&o, 1)).front();
}

double post_measurement_expectation(const Tableau& rho0, const GatePlan& plan, const PauliString& a,
                                    const PauliString& b) {
  require_support(plan, a, b);
  const OperatorExpression o = resource_product(a, b);
  return post_measurement_expectations(rho0, plan, std::span(&o, 1)).front();
}

std::pair<PauliString, PauliString> split_resource_pauli(const GatePlan& plan, const PauliString& resource) {
  const std::size_t ni = plan.inputs.size();
  if (resource.size() != ni + plan.outputs.size()) throw DimensionError("observable must act on the resource register");
  std::vector<std::size_t> in(ni), out(plan.outputs.size());
  for (std::size_t i = 0; i < ni; ++i) in[i] = i;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ni + i;
  return {resource.restrict_to(in), resource.restrict_to(out).with_phase(Phase::plus_one())};
}

SymbolicExpression derive_symbolic(const GatePlan& plan, const PauliString& a, const PauliString& b) {
  require_support(plan, a, b);
  const std::size_t n = plan.num_qubits();
  PauliString ab = a.embed(n, plan.inputs);
  ab *= b.embed(n, plan.outputs);

  // The correction flips B's sign by sign * prod m_f; collect that product.
  std::vector<std::size_t> factors;
  int sign = 1;
  for (std::size_t i = 0; i < plan.outputs.size(); ++i) {
    const char letter = b.at(i);
    const Correction& c = plan.corrections.at(i);
    if (letter == 'Z' || letter == 'Y') {
      sign *= c.x_parity.sign;
      factors.insert(factors.end(), c.x_parity.factors.begin(), c.x_parity.factors.end());
    }
    if (letter == 'X' || letter == 'Y') {
      sign *= c.z_parity.sign;
      factors.insert(factors.end(), c.z_parity.factors.begin(), c.z_parity.factors.end());
    }
  }
  const ParityFormula flips = ParityFormula::of(std::move(factors), sign);

  // m_f P_f = P_f E_f: each outcome becomes the observable measured on f.
  std::map<std::size_t, SymbolicExpression> memo;
  std::function<SymbolicExpression(std::size_t)> observable_of = [&](std::size_t q) -> SymbolicExpression {
    if (auto it = memo.find(q); it != memo.end()) return it->second;
    const auto st = std::find_if(plan.steps.begin(), plan.steps.end(), [&](const auto& s) { return s.qubit == q; });
    if (st == plan.steps.end()) throw UnsupportedError("parity factor m" + std::to_string(q) + " is not measured");
    SymbolicExpression e;
    if (st->basis != MeasurementBasis::XEta) {
      e = SymbolicExpression::from_pauli(PauliString::single(n, q, st->skeleton_pauli()));
    } else {
      const std::size_t sym = plan.angle_symbol(q);
      SymbolicExpression dep = SymbolicExpression::from_pauli(PauliString(n));
      for (std::size_t d : st->angle_dependencies) dep = dep * observable_of(d);
      e = SymbolicExpression::from_pauli(PauliString::single(n, q, 'X'), TrigPolynomial::cos_of(sym)) +
          (dep * SymbolicExpression::from_pauli(PauliString::single(n, q, 'Y'))).scaled(TrigPolynomial::sin_of(sym));
    }
    memo.emplace(q, e);
    return e;
  };

  SymbolicExpression expr = SymbolicExpression::from_pauli(ab, TrigPolynomial::constant(flips.sign));
  for (std::size_t f : flips.factors) expr = expr * observable_of(f);
  return expr;
}

SymbolicExpression derive_symbolic(const GatePlan& plan, const SymbolicExpression& resource_observable) {
  SymbolicExpression out(plan.num_qubits());
  for (const auto& [p, c] : resource_observable.terms()) {
    const auto [a, b] = split_resource_pauli(plan, p);
    out = out + derive_symbolic(plan, a, b).scaled(c);
  }
  return out;
}

OperatorExpression derive_pre_measurement_expression(const GatePlan& plan, const PauliString& a, const PauliString& b) {
  return derive_symbolic(plan, a, b).evaluate(plan.angles());
}

OperatorExpression derive_pre_measurement_expression(const GatePlan& plan, const OperatorExpression& resource_observable) {
  OperatorExpression out(plan.num_qubits());
  for (const auto& t : resource_observable.terms()) {
    const auto [a, b] = split_resource_pauli(plan, t.op);
    out += t.coefficient * derive_pre_measurement_expression(plan, a, b);
  }
  return out;
}

double pre_measurement_expectation(const StateVector& rho0, const OperatorExpression& expr) {
  return expectation(rho0, expr);
}

double pre_measurement_expectation(const BranchEnsemble& rho0, const OperatorExpression& expr) {
  return expectation(rho0, expr);
}

double pre_measurement_expectation(const Tableau& rho0, const OperatorExpression& expr) {
  if (expr.num_qubits() != rho0.num_qubits()) throw DimensionError("expression and tableau sizes differ");
  double v = 0.0;
  for (const auto& t : expr.terms()) v += t.coefficient * rho0.expectation(t.op);
  return v;
}

SymbolicExpression StabilizerProductForm::expand(const Graph& g) const {
  if (g.num_vertices() != num_qubits) throw DimensionError("graph size does not match the product form");
  SymbolicExpression out(num_qubits);
  for (const auto& m : monomials) {
    PauliString p = m.remainder;
    for (std::size_t a : m.sites) p *= cluster_stabilizer(g, a);
    out.add(p, m.coefficient);
  }
  return out;
}

bool StabilizerProductForm::pure_stabilizer() const {
  return std::all_of(monomials.begin(), monomials.end(),
                     [](const auto& m) { return m.remainder.is_identity_up_to_phase(); });
}

std::string StabilizerProductForm::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    const auto& m = monomials[i];
    if (i) os << " + ";
    os << '(' << m.coefficient.str() << ')';
    if (!m.remainder.is_identity_up_to_phase()) os << " (" << m.remainder.sparse_str() << ')';
    for (std::size_t a : m.sites) os << " K" << a;
  }
  return os.str();
}

StabilizerProductForm decompose_into_stabilizers(const Graph& g, const SymbolicExpression& expr) {
  constexpr std::size_t kMaxSearchBits = 20;
  const std::size_t n = g.num_vertices();
  if (expr.num_qubits() != n) throw DimensionError("expression and graph sizes differ");
  StabilizerProductForm form;
  form.num_qubits = n;
  for (const auto& [p, c] : expr.terms()) {
    std::vector<std::size_t> xs;
    for (std::size_t q = 0; q < n; ++q) {
      if (p.x(q)) xs.push_back(q);
    }
    if (xs.size() > kMaxSearchBits) throw ResourceLimitError("term too wide for stabilizer decomposition");

    // Lightest Hermitian remainder; ties go to the larger K product.
    PauliString best_rem = p;
    std::vector<std::size_t> best_sites;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << xs.size()); ++mask) {
      PauliString k(n);
      std::vector<std::size_t> sites;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (mask >> i & 1) {
          k *= cluster_stabilizer(g, xs[i]);
          sites.push_back(xs[i]);
        }
      }
      if (!k.commutes(p)) continue;
      PauliString rem = p * k;
      const std::size_t w = rem.weight();
      const std::size_t bw = best_rem.weight();
      if (w < bw || (w == bw && sites.size() > best_sites.size())) {
        best_rem = std::move(rem);
        best_sites = std::move(sites);
      }
    }
    TrigPolynomial coeff = c;
    if (best_rem.phase() == Phase::minus_one()) coeff = -coeff;
    form.monomials.push_back({coeff, best_rem.with_phase(Phase::plus_one()), best_sites});
  }
  return form;
}

StabilizerProductForm stabilizer_product_form(const GatePlan& plan, const PauliString& a, const PauliString& b) {
  return decompose_into_stabilizers(plan.graph, derive_symbolic(plan, a, b));
}

StabilizerProductForm stabilizer_product_form(const GatePlan& plan, const SymbolicExpression& resource_observable) {
  return decompose_into_stabilizers(plan.graph, derive_symbolic(plan, resource_observable));
}

std::vector<PauliString> resource_pauli_basis(std::size_t r) {
  if (r > 6) throw ResourceLimitError("Pauli basis limited to 6 qubits");
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * r);
  constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t k = 0; k < count; ++k) {
    PauliString p(r);
    for (std::size_t q = 0; q < r; ++q) p.set(q, kLetters[(k >> (2 * (r - 1 - q))) & 3]);
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

template <typename State>
DensityMatrix tomography(const State& rho0, const GatePlan& plan) {
  const std::size_t r = plan.inputs.size() + plan.outputs.size();
  const auto basis = resource_pauli_basis(r);
  std::vector<OperatorExpression> obs;
  obs.reserve(basis.size());
  for (const auto& p : basis) obs.push_back(OperatorExpression::from_pauli(p));
  const auto values = post_measurement_expectations(rho0, plan, obs);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << r);
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < basis.size(); ++k) rho += values[k] * pauli_matrix(basis[k]);
  rho /= static_cast<double>(dim);
  check_density(rho, 1e-9, 1e-9);
  return rho;
}

std::vector<Eigen::MatrixXcd> stabilizer_matrices(const GatePlan& plan) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& s : plan.ideal_stabilizers()) out.push_back(to_matrix(s));
  return out;
}

}  // namespace

DensityMatrix resource_tomography(const StateVector& rho0, const GatePlan& plan) { return tomography(rho0, plan); }
DensityMatrix resource_tomography(const BranchEnsemble& rho0, const GatePlan& plan) { return tomography(rho0, plan); }
DensityMatrix resource_tomography(const Tableau& rho0, const GatePlan& plan) { return tomography(rho0, plan); }

Eigen::VectorXcd ideal_resource_state(const GatePlan& plan) {
  const auto mats = stabilizer_matrices(plan);
  const Eigen::Index dim = mats.front().rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd proj = id;
  for (const auto& m : mats) proj = proj * (id + m) * 0.5;
  if (std::abs(proj.trace().real() - 1.0) > 1e-9) {
    throw UnsupportedError("ideal stabilizers of plan '" + plan.label + "' do not fix a unique state");
  }

  // Generic seed: no symmetry that a stabilizer projector could annihilate.
  Eigen::VectorXcd seed(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    seed[i] = Complex(1.0 + 0.5 * static_cast<double>(i), 0.25 + 0.125 * static_cast<double>(i * i));
  }
  Eigen::VectorXcd psi = proj * seed.normalized();
  for (Eigen::Index i = 0; psi.norm() < 1e-6 && i < dim; ++i) psi = proj.col(i);
  if (psi.norm() < 1e-6) throw NumericalError("ideal resource projector annihilated every trial vector");
  psi.normalize();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(psi[i]) > 1e-9) {
      psi *= std::conj(psi[i]) / std::abs(psi[i]);
      break;
    }
  }
  return psi;
}

double gate_fidelity(const DensityMatrix& rho, const GatePlan& plan) {
  const auto mats = stabilizer_matrices(plan);
  if (rho.rows() != mats.front().rows()) throw DimensionError("density size does not match the resource register");
  check_density(rho, 1e-9, 1e-9);
  const Eigen::VectorXcd psi = ideal_resource_state(plan);
  const double direct = (psi.adjoint() * rho * psi)(0, 0).real();

  const std::size_t k = mats.size();
  double average = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) prod = prod * mats[i];
    }
    average += (rho * prod).trace().real();
  }
  average /= static_cast<double>(std::uint64_t{1} << k);
  if (std::abs(direct - average) > 1e-10) {
    throw NumericalError("fidelity formulas disagree: " + std::to_string(direct) + " vs " + std::to_string(average));
  }
  return direct;
}

}  // namespace mbqc
