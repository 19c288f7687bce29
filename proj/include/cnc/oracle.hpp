// Exact dense-operator circuit evaluation: Born-rule branch probabilities
// by explicit enumeration, the ground truth for simulator acceptance.

#pragma once

#include <map>
#include <vector>

#include "cnc/circuit.hpp"
#include "cnc/config.hpp"
#include "cnc/pauli.hpp"

namespace cnc {

struct DensityState {
  int n = 1;
  int d = 3;
  DenseOperator rho;

  // trace 1, Hermitian, eigenvalues >= -1e-9
  void validate(double tol = 1e-9) const;

  static DensityState computational_zero(int n, int d, int cap = kDefaultDenseCap);
  static DensityState maximally_mixed(int n, int d, int cap = kDefaultDenseCap);
  static DensityState pure(int n, int d, const Eigen::VectorXcd& psi);
};

// Joint Born probability of the branch with the given outcomes (one per
// measurement, in circuit order) and the reached state.  Gates apply as
// unitary conjugation; conditional gates follow the branch outcomes.
// Normalization of a zero-probability branch throws.
std::pair<double, DensityState> evolve(const DensityState& rho,
                                       const Circuit& circuit,
                                       const std::vector<fe>& branch_outcomes,
                                       int cap = kDefaultDenseCap);

// Full joint distribution over measurement outcome tuples, adaptive
// branching included.  Works for any trace-1 Hermitian input (phase-space
// point operators produce genuine distributions too); throws CapExceeded
// past the branch cap.
std::map<std::vector<fe>, double> joint_distribution(
    const DenseOperator& rho, const Circuit& circuit,
    int64_t branch_cap = kDefaultBranchCap, int cap = kDefaultDenseCap);

double tv_distance(const std::map<std::vector<fe>, double>& p,
                   const std::map<std::vector<fe>, double>& q);

}  // namespace cnc
