// Generalized Pauli operators with the odd-d phase convention
//
//     T_a = w^{-<a_z|a_x> * 2^{-1}} Z^{a_z[1]}X^{a_x[1]} x ... ,
//     w = exp(2 pi i / d),
//
// their composition function beta (identically zero for odd d under this
// convention), and isotropic-subspace projectors
//
//     Pi_I^r = (1/|I|) sum_{a in I} w^{-r(a)} T_a.
//
// Dense realizations are oracle/verification paths; they are capped at a
// configurable Hilbert-space dimension and never used by the sampling
// simulators.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "cnc/config.hpp"
#include "cnc/symplectic.hpp"

namespace cnc {

using DenseOperator = Eigen::MatrixXcd;

struct PhasedPauli {
  fe phase = 0;  // exponent of w
  Vec label;

  PhasedPauli() = default;
  explicit PhasedPauli(Vec a) : label(std::move(a)) {}
  PhasedPauli(fe p, Vec a) : phase(p), label(std::move(a)) {}
};

// T_a T_b = w^{2^{-1}[a,b]} T_{a+b}; the product stays in the group.
PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b);

std::complex<double> omega_power(int d, int64_t exponent);

// Hilbert space dimension d^n, or throws CapExceeded.
int64_t dense_dim(int n, int d, int cap = kDefaultDenseCap);

DenseOperator pauli_matrix(const Vec& a, int cap = kDefaultDenseCap);
DenseOperator pauli_matrix(const PhasedPauli& p, int cap = kDefaultDenseCap);

// beta(a,b) from T_a T_b = w^{-beta(a,b)} T_{a+b} for commuting a, b.
// Identically zero for odd d; kept explicit so downstream formulas read
// like the algebra they implement.  Throws if [a,b] != 0.
fe beta(const Vec& a, const Vec& b);

// Exponent of the group commutator T_a T_b T_a^-1 T_b^-1 = w^{[a,b]}.
fe commutator_phase(const Vec& a, const Vec& b);

// ---------------------------------------------------------------------------
// Outcome assignments r : I -> Z_d, linear on an isotropic subspace.

class OutcomeAssignment {
 public:
  // values[i] is r evaluated at subspace.basis()[i].
  OutcomeAssignment(Subspace subspace, std::vector<fe> values);

  // Convenience: the line <a> with r(a) = s.
  static OutcomeAssignment single(const Vec& a, fe s);

  const Subspace& subspace() const { return subspace_; }
  const std::vector<fe>& values() const { return values_; }
  fe eval(const Vec& v) const;  // linear extension; throws if v not in I

  auto operator<=>(const OutcomeAssignment&) const = default;

 private:
  Subspace subspace_;
  std::vector<fe> values_;
};

DenseOperator projector(const OutcomeAssignment& r, int cap = kDefaultDenseCap);

}  // namespace cnc
