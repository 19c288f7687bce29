#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cnc/oracle.hpp"

using namespace cnc;

namespace {

Circuit measure_all_z(int n, int d) {
  Circuit c;
  c.d = d;
  c.n = n;
  for (int k = 0; k < n; ++k)
    c.instructions.push_back(
        MeasureInstruction{Vec::unit_z(n, d, k), "m" + std::to_string(k)});
  return c;
}

Circuit random_circuit(int n, int d, int gates, int measures,
                       std::mt19937_64& rng) {
  Circuit c;
  c.d = d;
  c.n = n;
  int placed_measures = 0;
  while (placed_measures < measures) {
    for (int g = 0; g < gates / measures; ++g) {
      int pick = static_cast<int>(rng() % (n >= 2 ? 5 : 4));
      int q = static_cast<int>(rng() % n);
      GateName name = GateName::F;
      std::vector<int> qudits{q};
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
        }
      }
      int param = 1 + static_cast<int>(rng() % (d - 1));
      c.instructions.push_back(
          GateInstruction{gate(name, qudits, n, d, param),
                          GateSpec{name, qudits, param}});
    }
    Vec a(n, d);
    while (a.is_zero()) {
      std::vector<fe> coords(2 * n);
      for (auto& v : coords) v = static_cast<fe>(rng() % d);
      a = Vec(n, d, coords);
    }
    c.instructions.push_back(
        MeasureInstruction{a, "m" + std::to_string(placed_measures)});
    ++placed_measures;
  }
  return c;
}

}  // namespace

TEST_CASE("density state validation") {
  DensityState ok = DensityState::computational_zero(1, 3);
  ok.validate();
  DensityState mixed = DensityState::maximally_mixed(2, 3);
  mixed.validate();

  DensityState bad = ok;
  bad.rho(0, 0) = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ok;
  bad.rho(0, 1) = 0.5;  // not Hermitian
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("empty circuit evolves trivially") {
  Circuit c;
  c.d = 3;
  c.n = 1;
  DensityState rho = DensityState::computational_zero(1, 3);
  auto [p, out] = evolve(rho, c, {});
  CHECK(p == doctest::Approx(1.0));
  CHECK((out.rho - rho.rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("computational zero measured in Z is deterministic") {
  DensityState rho = DensityState::computational_zero(1, 3);
  Circuit c = measure_all_z(1, 3);
  auto [p0, s0] = evolve(rho, c, {0});
  CHECK(p0 == doctest::Approx(1.0));
  auto [p1, s1] = evolve(rho, c, {1});
  CHECK(p1 == doctest::Approx(0.0));

  auto joint = joint_distribution(rho.rho, c);
  REQUIRE(joint.count({0}) == 1);
  CHECK(joint.at({0}) == doctest::Approx(1.0));
  CHECK(joint.size() == 1);
}

TEST_CASE("maximally mixed single measurement is uniform") {
  DensityState rho = DensityState::maximally_mixed(1, 3);
  auto joint = joint_distribution(rho.rho, measure_all_z(1, 3));
  REQUIRE(joint.size() == 3);
  for (const auto& [k, v] : joint) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("branch probabilities sum to one") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    Circuit c = random_circuit(2, 3, 3, 1 + static_cast<int>(rng() % 3), rng);
    DensityState rho = DensityState::computational_zero(2, 3);
    auto joint = joint_distribution(rho.rho, c);
    double total = 0;
    for (const auto& [k, v] : joint) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));

    // per-branch evolve agrees with the joint table
    for (const auto& [branch, p] : joint) {
      auto [pb, state] = evolve(rho, c, branch);
      CHECK(pb == doctest::Approx(p).epsilon(1e-9));
      state.validate(1e-7);
    }
  }
}

TEST_CASE("gates preserve trace and positivity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    Circuit c = random_circuit(2, 3, 6, 1, rng);
    c.instructions.pop_back();  // drop the measurement, keep gates
    DensityState rho = DensityState::maximally_mixed(2, 3);
    auto [p, out] = evolve(rho, c, {});
    CHECK(p == doctest::Approx(1.0));
    out.validate(1e-7);
  }
}

TEST_CASE("adaptive branching follows recorded outcomes") {
  // measure Z on qudit 0; if outcome == 1 apply X on qudit 1; measure Z there
  int n = 2, d = 3;
  Circuit c;
  c.d = d;
  c.n = n;
  c.instructions.push_back(MeasureInstruction{Vec::unit_z(n, d, 0), "m0"});
  CondGateInstruction cg;
  cg.condition.coeffs["m0"] = 1;
  cg.condition.constant = normalize_mod(-1, d);  // fires iff m0 == 1
  cg.gate = GateInstruction{gate(GateName::X, {1}, n, d, 2),
                            GateSpec{GateName::X, {1}, 2}};
  c.instructions.push_back(cg);
  c.instructions.push_back(MeasureInstruction{Vec::unit_z(n, d, 1), "m1"});

  // input: (|0> + |1>)/sqrt(2) on qudit 0, |0> on qudit 1
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(3) = 1.0 / std::sqrt(2.0);
  DensityState rho = DensityState::pure(n, d, psi);
  auto joint = joint_distribution(rho.rho, c);
  // m0 = 0 -> m1 = 0; m0 = 1 -> qudit 1 shifted by 2 -> m1 = 2
  CHECK(joint.at({0, 0}) == doctest::Approx(0.5));
  CHECK(joint.at({1, 2}) == doctest::Approx(0.5));
  CHECK(joint.size() == 2);
}

TEST_CASE("branch cap is enforced") {
  DensityState rho = DensityState::maximally_mixed(2, 3);
  Circuit c = measure_all_z(2, 3);
  CHECK_THROWS_AS(joint_distribution(rho.rho, c, 2), CapExceeded);
}

TEST_CASE("tv distance") {
  std::map<std::vector<fe>, double> p{{{0}, 0.5}, {{1}, 0.5}};
  std::map<std::vector<fe>, double> q{{{0}, 1.0}};
  CHECK(tv_distance(p, p) == doctest::Approx(0.0));
  CHECK(tv_distance(p, q) == doctest::Approx(0.5));
  std::map<std::vector<fe>, double> r{{{2}, 1.0}};
  CHECK(tv_distance(q, r) == doctest::Approx(1.0));
  CHECK(tv_distance(p, q) == tv_distance(q, p));
}
