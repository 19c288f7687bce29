#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cnc/pauli.hpp"

using namespace cnc;

namespace {

constexpr double kTol = 1e-9;

Vec rand_vec(int n, int d, std::mt19937_64& rng) {
  std::vector<fe> c(2 * n);
  for (auto& v : c) v = static_cast<fe>(rng() % d);
  return Vec(n, d, c);
}

double max_abs(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("identity and shift matrices") {
  int d = 3, n = 1;
  CHECK(max_abs(pauli_matrix(Vec(n, d)) - DenseOperator::Identity(3, 3)) < kTol);

  // X = sum |j+1><j|
  DenseOperator x = pauli_matrix(Vec::unit_x(n, d, 0));
  DenseOperator expect = DenseOperator::Zero(3, 3);
  for (int j = 0; j < 3; ++j) expect((j + 1) % 3, j) = 1.0;
  CHECK(max_abs(x - expect) < kTol);

  // Z = sum w^j |j><j|
  DenseOperator z = pauli_matrix(Vec::unit_z(n, d, 0));
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(z(j, j) - omega_power(3, j)) < kTol);
}

TEST_CASE("pauli matrices are unitary") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    Vec a = rand_vec(2, 3, rng);
    DenseOperator t = pauli_matrix(a);
    CHECK(max_abs(t * t.adjoint() - DenseOperator::Identity(9, 9)) < kTol);
  }
}

TEST_CASE("group law with phases") {
  // T_a T_b = w^{[a,b]} T_b T_a, and T_a T_b = T_{a+b} for commuting pairs
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Vec a = rand_vec(2, 3, rng), b = rand_vec(2, 3, rng);
    DenseOperator ta = pauli_matrix(a), tb = pauli_matrix(b);
    std::complex<double> w = omega_power(3, symplectic_product(a, b));
    CHECK(max_abs(ta * tb - w * (tb * ta)) < kTol);
    if (symplectic_product(a, b) == 0)
      CHECK(max_abs(ta * tb - pauli_matrix(a + b)) < kTol);
  }
}

TEST_CASE("phased product matches matrices") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    PhasedPauli a(static_cast<fe>(rng() % 3), rand_vec(2, 3, rng));
    PhasedPauli b(static_cast<fe>(rng() % 3), rand_vec(2, 3, rng));
    CHECK(max_abs(pauli_matrix(a) * pauli_matrix(b) - pauli_matrix(a * b)) < kTol);
  }
}

TEST_CASE("beta vanishes for commuting labels") {
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 40) {
    Vec a = rand_vec(2, 3, rng), b = rand_vec(2, 3, rng);
    if (symplectic_product(a, b) != 0) {
      CHECK_THROWS_AS(beta(a, b), std::invalid_argument);
      continue;
    }
    CHECK(beta(a, b) == 0);
    // composition on matrices confirms the vanishing phase
    CHECK(max_abs(pauli_matrix(a) * pauli_matrix(b) - pauli_matrix(a + b)) < kTol);
    ++checked;
  }
  Vec a(1, 3, {1, 0});
  CHECK(beta(a, Vec(1, 3)) == 0);
  CHECK(beta(a, a.scaled(2)) == 0);
}

TEST_CASE("commutator phase matches matrices") {
  CHECK(commutator_phase(Vec(1, 3, {1, 0}), Vec(1, 3, {1, 0})) == 0);
  CHECK(commutator_phase(Vec::unit_z(1, 3, 0), Vec::unit_x(1, 3, 0)) == 1);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    Vec a = rand_vec(2, 3, rng), b = rand_vec(2, 3, rng);
    DenseOperator ta = pauli_matrix(a), tb = pauli_matrix(b);
    DenseOperator comm = ta * tb * ta.adjoint() * tb.adjoint();
    std::complex<double> w = omega_power(3, commutator_phase(a, b));
    CHECK(max_abs(comm - w * DenseOperator::Identity(9, 9)) < kTol);
  }
}

TEST_CASE("outcome assignment linearity") {
  int d = 3, n = 2;
  Vec e1 = Vec::unit_z(n, d, 0), e2 = Vec::unit_z(n, d, 1);
  OutcomeAssignment r(span({e1, e2}), {1, 2});
  CHECK(r.eval(e1) == 1);
  CHECK(r.eval(e2) == 2);
  CHECK(r.eval(e1 + e2) == 0);
  CHECK_THROWS_AS(r.eval(Vec::unit_x(n, d, 0)), std::invalid_argument);

  // consistency relation r(a) + r(b) - r(a+b) = -beta(a,b) = 0
  auto elems = span({e1, e2}).elements();
  for (const auto& a : elems)
    for (const auto& b : elems)
      CHECK(normalize_mod(r.eval(a) + r.eval(b) - r.eval(a + b), d) == 0);

  Vec f1 = Vec::unit_x(n, d, 0);
  CHECK_THROWS_AS(OutcomeAssignment(span({e1, f1}), {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("single-label assignment normalizes the scale") {
  int d = 3;
  Vec a(1, d, {0, 2});  // 2 * f
  OutcomeAssignment r = OutcomeAssignment::single(a, 1);
  CHECK(r.eval(a) == 1);
}

TEST_CASE("projector on the trivial subspace is the identity") {
  OutcomeAssignment r(Subspace(1, 3), {});
  CHECK(max_abs(projector(r) - DenseOperator::Identity(3, 3)) < kTol);
}

TEST_CASE("Z eigenprojector") {
  // I = <(1,0)>, r = 0 projects onto |0><0|
  OutcomeAssignment r(span({Vec::unit_z(1, 3, 0)}), {0});
  DenseOperator pi = projector(r);
  DenseOperator expect = DenseOperator::Zero(3, 3);
  expect(0, 0) = 1.0;
  CHECK(max_abs(pi - expect) < kTol);
}

TEST_CASE("projector properties") {
  std::mt19937_64 rng(8);
  int d = 3, n = 2;
  auto isos = all_isotropic_subspaces(n, d);
  for (int trial = 0; trial < 25; ++trial) {
    const Subspace& iso = isos[rng() % isos.size()];
    std::vector<fe> values(iso.dim());
    for (auto& v : values) v = static_cast<fe>(rng() % d);
    OutcomeAssignment r(iso, values);
    DenseOperator pi = projector(r);
    CHECK(max_abs(pi - pi.adjoint()) < kTol);                 // Hermitian
    CHECK(max_abs(pi * pi - pi) < kTol);                      // idempotent
    double rank = pi.trace().real();
    CHECK(rank == doctest::Approx(9.0 / iso.element_count()).epsilon(1e-9));
    // orthogonality for distinct outcomes on the same subspace
    if (iso.dim() > 0) {
      std::vector<fe> other = values;
      other[0] = normalize_mod(other[0] + 1, d);
      DenseOperator pi2 = projector(OutcomeAssignment(iso, other));
      CHECK(max_abs(pi * pi2) < kTol);
    }
  }
}

TEST_CASE("projector resolution and Born consistency") {
  int d = 3, n = 1;
  Subspace iso = span({Vec(1, 3, {1, 2})});
  DenseOperator sum = DenseOperator::Zero(3, 3);
  std::vector<DenseOperator> projectors;
  for (fe v = 0; v < d; ++v) {
    projectors.push_back(projector(OutcomeAssignment(iso, {v})));
    sum += projectors.back();
  }
  CHECK(max_abs(sum - DenseOperator::Identity(3, 3)) < kTol);

  // arbitrary state: probabilities sum to one
  Eigen::VectorXcd psi(3);
  psi << std::complex<double>(0.3, 0.4), std::complex<double>(0.1, -0.2),
      std::complex<double>(0.8, 0.1);
  psi.normalize();
  DenseOperator rho = psi * psi.adjoint();
  double total = 0;
  for (const auto& pi : projectors) total += (rho * pi).trace().real();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  (void)n;
}

TEST_CASE("dense cap") {
  CHECK_THROWS_AS(pauli_matrix(Vec(6, 3)), CapExceeded);  // 3^6 = 729 > 250
  CHECK(dense_dim(5, 3) == 243);
}
