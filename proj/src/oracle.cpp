#include "cnc/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace cnc {

void DensityState::validate(double tol) const {
  int64_t dim = dense_dim(n, d);
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("density matrix has wrong dimension");
  if (std::abs(rho.trace().real() - 1.0) > tol ||
      std::abs(rho.trace().imag()) > tol)
    throw std::invalid_argument("density matrix must have trace 1");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("density matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(rho);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("density matrix must be positive semidefinite");
}

DensityState DensityState::computational_zero(int n, int d, int cap) {
  int64_t dim = dense_dim(n, d, cap);
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DensityState{n, d, rho};
}

DensityState DensityState::maximally_mixed(int n, int d, int cap) {
  int64_t dim = dense_dim(n, d, cap);
  return DensityState{n, d,
                      DenseOperator::Identity(dim, dim) / static_cast<double>(dim)};
}

DensityState DensityState::pure(int n, int d, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd v = psi.normalized();
  return DensityState{n, d, v * v.adjoint()};
}

static DenseOperator instruction_unitary(const GateInstruction& g, int cap) {
  if (g.spec)
    return gate_unitary(g.spec->name, g.spec->qudits, g.element.n, g.element.d,
                        g.spec->param, cap);
  return dense_unitary(g.element, cap);
}

static DenseOperator eigenprojector(const Vec& a, fe s, int cap) {
  return projector(OutcomeAssignment::single(a, s), cap);
}

std::pair<double, DensityState> evolve(const DensityState& rho,
                                       const Circuit& circuit,
                                       const std::vector<fe>& branch_outcomes,
                                       int cap) {
  circuit.validate();
  if (static_cast<int>(branch_outcomes.size()) != circuit.measurement_count())
    throw std::invalid_argument("one branch outcome per measurement required");
  DenseOperator state = rho.rho;
  double probability = 1.0;
  std::map<std::string, fe> outcomes;
  size_t next_outcome = 0;
  for (const auto& ins : circuit.instructions) {
    if (const auto* g = std::get_if<GateInstruction>(&ins)) {
      DenseOperator u = instruction_unitary(*g, cap);
      state = u * state * u.adjoint();
    } else if (const auto* cg = std::get_if<CondGateInstruction>(&ins)) {
      if (cg->condition.holds(outcomes, circuit.d)) {
        DenseOperator u = instruction_unitary(cg->gate, cap);
        state = u * state * u.adjoint();
      }
    } else if (const auto* m = std::get_if<MeasureInstruction>(&ins)) {
      fe s = branch_outcomes[next_outcome++];
      DenseOperator pi = eigenprojector(m->label, s, cap);
      state = pi * state * pi;
      double p = state.trace().real();
      probability *= std::max(0.0, p);
      outcomes[m->var] = s;
      if (probability <= 0) {
        // zero-probability branch: probability is exact, state undefined
        return {0.0, DensityState{circuit.n, circuit.d,
                                  DenseOperator::Zero(state.rows(), state.cols())}};
      }
      state /= p;
    }
  }
  return {probability, DensityState{circuit.n, circuit.d, state}};
}

static void branch_walk(const DenseOperator& state, double weight,
                        const Circuit& circuit, size_t instr_idx,
                        std::map<std::string, fe>& outcomes,
                        std::vector<fe>& branch,
                        std::map<std::vector<fe>, double>& out, int64_t branch_cap,
                        int64_t& branches, int cap) {
  if (weight <= 1e-15) {
    return;  // prune numerically dead branches
  }
  if (instr_idx == circuit.instructions.size()) {
    out[branch] += weight;
    return;
  }
  const auto& ins = circuit.instructions[instr_idx];
  if (const auto* g = std::get_if<GateInstruction>(&ins)) {
    DenseOperator u = instruction_unitary(*g, cap);
    branch_walk(u * state * u.adjoint(), weight, circuit, instr_idx + 1, outcomes,
                branch, out, branch_cap, branches, cap);
  } else if (const auto* cg = std::get_if<CondGateInstruction>(&ins)) {
    if (cg->condition.holds(outcomes, circuit.d)) {
      DenseOperator u = instruction_unitary(cg->gate, cap);
      branch_walk(u * state * u.adjoint(), weight, circuit, instr_idx + 1,
                  outcomes, branch, out, branch_cap, branches, cap);
    } else {
      branch_walk(state, weight, circuit, instr_idx + 1, outcomes, branch, out,
                  branch_cap, branches, cap);
    }
  } else if (const auto* m = std::get_if<MeasureInstruction>(&ins)) {
    if (++branches > branch_cap)
      throw CapExceeded("oracle branch count exceeds cap " +
                        std::to_string(branch_cap));
    for (fe s = 0; s < circuit.d; ++s) {
      DenseOperator pi = eigenprojector(m->label, s, cap);
      DenseOperator post = pi * state * pi;
      double p = post.trace().real();
      if (p <= 1e-15) continue;
      outcomes[m->var] = s;
      branch.push_back(s);
      branch_walk(post / p, weight * p, circuit, instr_idx + 1, outcomes, branch,
                  out, branch_cap, branches, cap);
      branch.pop_back();
      outcomes.erase(m->var);
    }
  }
}

std::map<std::vector<fe>, double> joint_distribution(const DenseOperator& rho,
                                                     const Circuit& circuit,
                                                     int64_t branch_cap, int cap) {
  circuit.validate();
  std::map<std::vector<fe>, double> out;
  std::map<std::string, fe> outcomes;
  std::vector<fe> branch;
  int64_t branches = 0;
  branch_walk(rho, 1.0, circuit, 0, outcomes, branch, out, branch_cap, branches,
              cap);
  return out;
}

double tv_distance(const std::map<std::vector<fe>, double>& p,
                   const std::map<std::vector<fe>, double>& q) {
  double acc = 0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    acc += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q)
    if (!p.count(k)) acc += std::abs(v);
  return acc / 2.0;
}

}  // namespace cnc
