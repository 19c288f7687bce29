#include "cnc/pauli.hpp"

#include <cmath>

namespace cnc {

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  int d = a.label.d;
  fe cross = normalize_mod(int64_t(half_mod(d)) *
                               symplectic_product(a.label, b.label),
                           d);
  return PhasedPauli(normalize_mod(int64_t(a.phase) + b.phase + cross, d),
                     a.label + b.label);
}

std::complex<double> omega_power(int d, int64_t exponent) {
  double angle = 2.0 * M_PI * normalize_mod(exponent, d) / d;
  return {std::cos(angle), std::sin(angle)};
}

int64_t dense_dim(int n, int d, int cap) {
  int64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= d;
    if (dim > cap)
      throw CapExceeded("dense dimension d^n exceeds cap " +
                        std::to_string(cap));
  }
  return dim;
}

DenseOperator pauli_matrix(const Vec& a, int cap) {
  int n = a.n, d = a.d;
  int64_t dim = dense_dim(n, d, cap);
  DenseOperator m = DenseOperator::Zero(dim, dim);
  // <a_z|a_x> * 2^{-1} global phase
  int64_t zx = 0;
  for (int k = 0; k < n; ++k) zx += int64_t(a.z(k)) * a.x(k);
  fe global = normalize_mod(-zx * half_mod(d), d);
  // T_a |j> = w^{global + sum_k a_z[k] (j_k + a_x[k])} |j + a_x>
  for (int64_t col = 0; col < dim; ++col) {
    int64_t rest = col;
    int64_t row = 0;
    int64_t stride = dim;
    int64_t phase = global;
    for (int k = 0; k < n; ++k) {
      stride /= d;
      int jk = static_cast<int>(rest / stride);
      rest %= stride;
      int out = (jk + a.x(k)) % d;
      phase += int64_t(a.z(k)) * out;
      row += out * stride;
    }
    m(row, col) = omega_power(d, phase);
  }
  return m;
}

DenseOperator pauli_matrix(const PhasedPauli& p, int cap) {
  return omega_power(p.label.d, p.phase) * pauli_matrix(p.label, cap);
}

fe beta(const Vec& a, const Vec& b) {
  if (symplectic_product(a, b) != 0)
    throw std::invalid_argument("beta requires commuting labels");
  return 0;
}

fe commutator_phase(const Vec& a, const Vec& b) {
  return symplectic_product(a, b);
}

// ---------------------------------------------------------------------------

OutcomeAssignment::OutcomeAssignment(Subspace subspace, std::vector<fe> values)
    : subspace_(std::move(subspace)), values_(std::move(values)) {
  if (!is_isotropic(subspace_))
    throw std::invalid_argument("outcome assignment needs an isotropic subspace");
  if (static_cast<int>(values_.size()) != subspace_.dim())
    throw std::invalid_argument("one value per basis row required");
  for (auto& v : values_) v = normalize_mod(v, subspace_.d());
}

OutcomeAssignment OutcomeAssignment::single(const Vec& a, fe s) {
  if (a.is_zero()) throw std::invalid_argument("zero measurement label");
  Subspace line = span({a});
  // line basis row b satisfies a = lambda b; set r(b) so that r(a) = s.
  auto coords = line.coordinates(a);
  fe lambda = coords->at(0);
  return OutcomeAssignment(line,
                           {normalize_mod(int64_t(inv_mod(lambda, a.d)) * s, a.d)});
}

fe OutcomeAssignment::eval(const Vec& v) const {
  auto coords = subspace_.coordinates(v);
  if (!coords) throw std::invalid_argument("vector outside assignment subspace");
  int64_t acc = 0;
  for (size_t i = 0; i < coords->size(); ++i)
    acc += int64_t((*coords)[i]) * values_[i];
  return normalize_mod(acc, subspace_.d());
}

DenseOperator projector(const OutcomeAssignment& r, int cap) {
  const Subspace& I = r.subspace();
  int64_t dim = dense_dim(I.n(), I.d(), cap);
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  for (const auto& a : I.elements())
    acc += omega_power(I.d(), -r.eval(a)) * pauli_matrix(a, cap);
  return acc / static_cast<double>(I.element_count());
}

}  // namespace cnc
