#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cnc/clifford.hpp"

using namespace cnc;

namespace {

double max_abs(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

Vec rand_vec(int n, int d, std::mt19937_64& rng) {
  std::vector<fe> c(2 * n);
  for (auto& v : c) v = static_cast<fe>(rng() % d);
  return Vec(n, d, c);
}

struct GateWord {
  CliffordElement element;
  DenseOperator unitary;  // product of textbook gate matrices
};

GateWord random_word(int n, int d, int length, std::mt19937_64& rng) {
  GateWord w{CliffordElement::identity(n, d),
             DenseOperator::Identity(dense_dim(n, d), dense_dim(n, d))};
  for (int i = 0; i < length; ++i) {
    int pick = static_cast<int>(rng() % (n >= 2 ? 5 : 4));
    int q = static_cast<int>(rng() % n);
    GateName name;
    std::vector<int> qudits{q};
    int param = 1 + static_cast<int>(rng() % (d - 1));
    switch (pick) {
      case 0: name = GateName::F; break;
      case 1: name = GateName::P; break;
      case 2: name = GateName::X; break;
      case 3: name = GateName::Z; break;
      default: {
        name = GateName::SUM;
        int t = static_cast<int>(rng() % n);
        while (t == q) t = static_cast<int>(rng() % n);
        qudits = {q, t};
        break;
      }
    }
    w.element = compose(gate(name, qudits, n, d, param), w.element);
    w.unitary = gate_unitary(name, qudits, n, d, param) * w.unitary;
  }
  return w;
}

// conjugation phase check: U T_a U^dag == w^{Phi(a)} T_{S a}
bool action_matches(const CliffordElement& g, const DenseOperator& u, const Vec& a) {
  DenseOperator lhs = u * pauli_matrix(a) * u.adjoint();
  DenseOperator rhs =
      omega_power(g.d, g.phase_of(a)) * pauli_matrix(g.apply_label(a));
  return max_abs(lhs - rhs) < 1e-8;
}

}  // namespace

TEST_CASE("named gate data is symplectic") {
  for (int n : {1, 2}) {
    for (int d : {3, 5}) {
      CHECK(is_symplectic(gate(GateName::F, {0}, n, d).s, n));
      CHECK(is_symplectic(gate(GateName::P, {0}, n, d).s, n));
      CHECK(is_symplectic(gate(GateName::X, {0}, n, d, 2).s, n));
      CHECK(is_symplectic(gate(GateName::Z, {0}, n, d).s, n));
      if (n >= 2) CHECK(is_symplectic(gate(GateName::SUM, {0, 1}, n, d).s, n));
    }
  }
  CHECK_THROWS_AS(gate(GateName::F, {3}, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(gate(GateName::SUM, {0, 0}, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(gate_name_from_string("H"), std::invalid_argument);
}

TEST_CASE("fourier gate maps (z,x) to (-x,z)") {
  CliffordElement f = gate(GateName::F, {0}, 1, 3);
  Vec z = Vec::unit_z(1, 3, 0), x = Vec::unit_x(1, 3, 0);
  CHECK(f.apply_label(z) == x);            // Z -> X
  CHECK(f.apply_label(x) == z.scaled(2));  // X -> Z^{-1}
  // verified against the dense unitary on every label
  DenseOperator u = gate_unitary(GateName::F, {0}, 1, 3);
  for (const auto& a : all_vectors(1, 3)) CHECK(action_matches(f, u, a));
}

TEST_CASE("x shift is pure translation") {
  CliffordElement x = gate(GateName::X, {0}, 1, 3, 1);
  CHECK(x.s == ModMatrix::identity(2, 3));
  CHECK(x.b == Vec::unit_x(1, 3, 0));
  // conjugation phase is the commutator with the translation label
  for (const auto& a : all_vectors(1, 3))
    CHECK(x.phase_of(a) == symplectic_product(x.b, a));
  DenseOperator u = gate_unitary(GateName::X, {0}, 1, 3, 1);
  for (const auto& a : all_vectors(1, 3)) CHECK(action_matches(x, u, a));
}

TEST_CASE("phase and sum gates act exactly") {
  CliffordElement p = gate(GateName::P, {0}, 1, 3);
  DenseOperator up = gate_unitary(GateName::P, {0}, 1, 3);
  for (const auto& a : all_vectors(1, 3)) CHECK(action_matches(p, up, a));

  CliffordElement s = gate(GateName::SUM, {0, 1}, 2, 3);
  DenseOperator us = gate_unitary(GateName::SUM, {0, 1}, 2, 3);
  for (const auto& a : all_vectors(2, 3)) CHECK(action_matches(s, us, a));
}

TEST_CASE("every generator gate is exact at n=2 d=3") {
  // exhaustive conjugation check over all labels per gate
  std::vector<std::pair<CliffordElement, DenseOperator>> gates;
  for (int q : {0, 1}) {
    gates.push_back({gate(GateName::F, {q}, 2, 3),
                     gate_unitary(GateName::F, {q}, 2, 3)});
    gates.push_back({gate(GateName::P, {q}, 2, 3),
                     gate_unitary(GateName::P, {q}, 2, 3)});
    gates.push_back({gate(GateName::X, {q}, 2, 3, 2),
                     gate_unitary(GateName::X, {q}, 2, 3, 2)});
    gates.push_back({gate(GateName::Z, {q}, 2, 3, 1),
                     gate_unitary(GateName::Z, {q}, 2, 3, 1)});
  }
  gates.push_back({gate(GateName::SUM, {0, 1}, 2, 3),
                   gate_unitary(GateName::SUM, {0, 1}, 2, 3)});
  gates.push_back({gate(GateName::SUM, {1, 0}, 2, 3),
                   gate_unitary(GateName::SUM, {1, 0}, 2, 3)});
  for (const auto& [g, u] : gates)
    for (const auto& a : all_vectors(2, 3)) CHECK(action_matches(g, u, a));
}

TEST_CASE("composition matches unitary products") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    GateWord g = random_word(2, 3, 6, rng);
    GateWord h = random_word(2, 3, 6, rng);
    CliffordElement gh = compose(g.element, h.element);
    DenseOperator u = g.unitary * h.unitary;
    for (int check = 0; check < 10; ++check) {
      Vec a = rand_vec(2, 3, rng);
      CHECK(action_matches(gh, u, a));
    }
  }
}

TEST_CASE("identity and inverse") {
  std::mt19937_64 rng(5);
  CliffordElement id = CliffordElement::identity(2, 3);
  GateWord g = random_word(2, 3, 8, rng);
  CHECK(compose(g.element, id) == g.element);
  CHECK(compose(id, g.element) == g.element);
  CHECK(compose(g.element, inverse(g.element)) == id);
  CHECK(compose(inverse(g.element), g.element) == id);
}

TEST_CASE("raw element construction validates the matrix") {
  ModMatrix bad = ModMatrix::identity(2, 3);
  bad.m[0][0] = 2;  // not symplectic
  CHECK_THROWS_AS(CliffordElement::from_parts(bad, Vec(1, 3)),
                  std::invalid_argument);
  CliffordElement f = gate(GateName::F, {0}, 1, 3);
  CliffordElement raw = CliffordElement::from_parts(f.s, Vec(1, 3, {1, 2}));
  CHECK(raw.s == f.s);
}

TEST_CASE("solved dense unitary agrees with textbook gates") {
  // dense_unitary is reconstructed from the (S, b) action; it must match
  // the independent matrices up to global phase
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    GateWord w = random_word(2, 3, 5, rng);
    DenseOperator solved = dense_unitary(w.element);
    CHECK(max_abs(solved * solved.adjoint() - DenseOperator::Identity(9, 9)) <
          1e-8);
    for (int check = 0; check < 10; ++check) {
      Vec a = rand_vec(2, 3, rng);
      CHECK(action_matches(w.element, solved, a));
    }
    DenseOperator ratio = solved.adjoint() * w.unitary;
    std::complex<double> phase = ratio(0, 0) / std::abs(ratio(0, 0));
    CHECK(max_abs(ratio - phase * DenseOperator::Identity(9, 9)) < 1e-8);
  }
}

TEST_CASE("phase point update matches dense conjugation") {
  std::mt19937_64 rng(11);
  auto sets = enumerate_cnc_sets(2, 3, 5, 200);
  int checked = 0;
  while (checked < 40) {
    const CncSet& s = sets[rng() % sets.size()];
    std::vector<fe> values(s.assignment_generators().size());
    for (auto& v : values) v = static_cast<fe>(rng() % 3);
    PhasePoint p{s, extend_assignment(s, values)};
    GateWord g = random_word(2, 3, 1 + static_cast<int>(rng() % 6), rng);

    PhasePoint q = act_on_phase_point(g.element, p);
    CHECK(q.set.form() == p.set.form());
    CHECK(q.set.kind() == p.set.kind());
    CHECK(q.set.core().dim() == p.set.core().dim());
    CHECK(q.set.xi() == p.set.xi());

    DenseOperator lhs = g.unitary * phase_point_operator(p) * g.unitary.adjoint();
    CHECK(max_abs(lhs - phase_point_operator(q)) < 1e-8);
    ++checked;
  }
}

TEST_CASE("identity leaves phase points unchanged") {
  CliffordElement id = CliffordElement::identity(1, 3);
  PhasePoint p = PhasePoint::wigner(Vec(1, 3, {1, 2}));
  CHECK(act_on_phase_point(id, p) == p);
}

TEST_CASE("wigner covariance") {
  // g A_u g^dag = A_{S u + b}
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    GateWord g = random_word(1, 3, 5, rng);
    for (const auto& u : all_vectors(1, 3)) {
      PhasePoint mapped = act_on_phase_point(g.element, PhasePoint::wigner(u));
      Vec expect = act_on_wigner_label(g.element, u);
      CHECK(mapped == PhasePoint::wigner(expect));
    }
  }
}
