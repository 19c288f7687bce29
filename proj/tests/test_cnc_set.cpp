#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "cnc/cnc_set.hpp"

using namespace cnc;

namespace {

constexpr double kTol = 1e-9;

Vec rand_vec(int n, int d, std::mt19937_64& rng) {
  std::vector<fe> c(2 * n);
  for (auto& v : c) v = static_cast<fe>(rng() % d);
  return Vec(n, d, c);
}

CncSet full_space(int n, int d) {
  std::vector<Vec> units;
  for (int k = 0; k < n; ++k) {
    units.push_back(Vec::unit_z(n, d, k));
    units.push_back(Vec::unit_x(n, d, k));
  }
  return CncSet::subspace(span(units));
}

double max_abs(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

// Definition-level noncontextuality: additive on every orthogonal pair.
bool noncontextual(const PhasePoint& p) {
  auto elems = p.set.elements();
  for (const auto& a : elems)
    for (const auto& b : elems) {
      if (symplectic_product(a, b) != 0) continue;
      fe lhs = normalize_mod(p.gamma_of(a) + p.gamma_of(b), p.d());
      if (lhs != p.gamma_of(a + b)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("canonical forms") {
  int d = 3, n = 1;
  Vec e = Vec::unit_z(n, d, 0), f = Vec::unit_x(n, d, 0);

  // the full single-qudit space is a subspace of rank 2: d+1 coset lines
  CncSet full = full_space(1, 3);
  CHECK(full.form() == CncForm::SubspaceForm);
  CHECK(full.kind() == CncKind::PlaneSubspace);
  CHECK(full.xi() == 4);
  CHECK(full.core().dim() == 0);
  CHECK(full.element_count() == 9);

  // a cone over two noncommuting lines
  CncSet cone = CncSet::cone(Subspace(n, d), {e, f});
  CHECK(cone.form() == CncForm::ConeForm);
  CHECK(cone.xi() == 2);
  CHECK(cone.element_count() == 2 * 2 + 1);  // (xi(d-1)+1) d^0

  // a single generator collapses to the subspace it spans
  CncSet line = CncSet::cone(Subspace(n, d), {e.scaled(2)});
  CHECK(line.form() == CncForm::SubspaceForm);
  CHECK(line.kind() == CncKind::LinearSubspace);
  CHECK(line.space() == span({e}));

  // the full set of d+1 lines collapses to the plane subspace
  CncSet all4 = CncSet::cone(Subspace(n, d), {e, f, e + f, e + f.scaled(2)});
  CHECK(all4 == full);
}

TEST_CASE("cone constructor rejects bad structure") {
  int d = 3, n = 2;
  Vec e1 = Vec::unit_z(n, d, 0), e2 = Vec::unit_z(n, d, 1);
  Vec f1 = Vec::unit_x(n, d, 0);
  // commuting generators
  CHECK_THROWS_AS(CncSet::cone(Subspace(n, d), {e1, e2}), std::invalid_argument);
  // generator inside the core
  CHECK_THROWS_AS(CncSet::cone(span({e1}), {e1.scaled(2)}), std::invalid_argument);
  // generator not commuting with the core
  CHECK_THROWS_AS(CncSet::cone(span({e1}), {f1, e1 + f1}), std::invalid_argument);
  // non-isotropic core
  CHECK_THROWS_AS(CncSet::cone(span({e1, f1}), {e2}), std::invalid_argument);

  CHECK(validate_cone(Subspace(n, d), {e1, e2}).ok == false);
  CHECK(validate_cone(Subspace(n, d), {e1, f1}).ok == true);
}

TEST_CASE("element sets and the size formula") {
  int d = 3, n = 2;
  Vec e1 = Vec::unit_z(n, d, 0), f1 = Vec::unit_x(n, d, 0);
  Vec e2 = Vec::unit_z(n, d, 1);

  // cone with a one-dimensional core: (xi d - xi + 1) d^{dim I}
  CncSet c = CncSet::cone(span({e2}), {e1, f1});
  CHECK(c.element_count() == (2 * 3 - 2 + 1) * 3);
  auto elems = c.elements();
  CHECK(elems.size() == c.element_count());
  std::set<Vec> uniq(elems.begin(), elems.end());
  CHECK(uniq.size() == elems.size());
  for (const auto& v : elems) CHECK(c.contains(v));

  // subspace forms count d^dim
  CHECK(full_space(2, 3).element_count() == 81);
  CHECK(CncSet::subspace(Subspace(n, d)).element_count() == 1);
}

TEST_CASE("every canonical set is closed under inference") {
  std::mt19937_64 rng(13);
  auto sets = enumerate_cnc_sets(2, 3, 7, 400);
  int checked = 0;
  for (const auto& s : sets) {
    if (s.form() == CncForm::ConeForm && rng() % 7 != 0) continue;
    CHECK(closure_check(s));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("classify round trip") {
  int d = 3;
  // full space
  CncSet full = full_space(1, d);
  CHECK(CncSet::classify(full.elements()) == full);

  // union of the four lines of E_1 classifies as the same subspace
  std::vector<Vec> union_elems;
  for (const auto& c : line_covering(d))
    for (const auto& v : span({c}).elements()) union_elems.push_back(v);
  CHECK(CncSet::classify(union_elems) == full);

  // random canonical sets at n = 2
  auto sets = enumerate_cnc_sets(2, 3, 7, 300);
  for (size_t i = 0; i < sets.size(); i += 5)
    CHECK(CncSet::classify(sets[i].elements()) == sets[i]);

  // not closed under inference
  Vec e = Vec::unit_z(1, d, 0), f = Vec::unit_x(1, d, 0);
  CHECK_THROWS_AS(CncSet::classify({Vec(1, d), e}), std::invalid_argument);
  CHECK_THROWS_AS(CncSet::classify({Vec(1, d), e, e.scaled(2), f}),
                  std::invalid_argument);
}

TEST_CASE("classify of random closures validates") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<Vec> seed;
    int k = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) seed.insert(rand_vec(2, 3, rng));
    auto closed = orthogonal_closure(seed);
    CncSet s = CncSet::classify({closed.begin(), closed.end()});
    auto elems = s.elements();
    CHECK(std::set<Vec>(elems.begin(), elems.end()) == closed);
    if (s.form() == CncForm::ConeForm)
      CHECK(validate_cone(s.core(), s.generators()).ok);
  }
}

TEST_CASE("assignments extend linearly on cosets") {
  int d = 3, n = 1;
  // gamma(e)=0, gamma(f)=0, gamma(e+f)=1, gamma(e+2f)=0: valid but nonlinear
  CncSet full = full_space(n, d);
  auto gens = full.assignment_generators();
  REQUIRE(gens.size() == 4);
  std::vector<fe> values(4, 0);
  Vec ef = Vec(1, 3, {1, 1});
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == ef) values[i] = 1;
  PhasePoint p{full, extend_assignment(full, values)};
  CHECK(noncontextual(p));
  CHECK_FALSE(p.gamma.is_linear(p.set));
  CHECK(p.gamma_of(ef) == 1);
  CHECK(p.gamma_of(ef.scaled(2)) == 2);  // linear along the line
  CHECK(p.gamma_of(Vec::unit_z(n, d, 0)) == 0);

  // all-zero values are valid and linear
  PhasePoint zero{full, extend_assignment(full, {0, 0, 0, 0})};
  CHECK(noncontextual(zero));
  CHECK(zero.gamma.is_linear(zero.set));

  // linear extension on an isotropic subspace
  Vec e1 = Vec::unit_z(2, 3, 0), e2 = Vec::unit_z(2, 3, 1);
  CncSet iso = CncSet::subspace(span({e1, e2}));
  PhasePoint q{iso, extend_assignment(iso, {1, 2})};
  CHECK(q.gamma_of(e1 + e2) == 0);
  CHECK(noncontextual(q));
}

TEST_CASE("random assignments are noncontextual by construction") {
  std::mt19937_64 rng(11);
  auto sets = enumerate_cnc_sets(2, 3, 5, 150);
  for (const auto& s : sets) {
    if (rng() % 9 != 0) continue;
    std::vector<fe> values(s.assignment_generators().size());
    for (auto& v : values) v = static_cast<fe>(rng() % 3);
    PhasePoint p{s, extend_assignment(s, values)};
    CHECK(noncontextual(p));
  }
}

TEST_CASE("wigner points are linear") {
  for (const auto& u : all_vectors(1, 3)) {
    PhasePoint p = PhasePoint::wigner(u);
    CHECK(p.gamma.is_linear(p.set));
    for (const auto& b : p.set.elements())
      CHECK(p.gamma_of(b) == symplectic_product(b, u));
  }
}

TEST_CASE("nonlinear assignments admit no linear extension") {
  CncSet full = full_space(1, 3);
  auto gens = full.assignment_generators();
  std::vector<fe> values(4, 0);
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == Vec(1, 3, {1, 1})) values[i] = 1;
  ValueAssignment gamma = extend_assignment(full, values);
  CHECK_FALSE(gamma.is_linear(full));
}

TEST_CASE("value assignments on rank-4 subspaces are exactly the linear ones") {
  // solve the noncontextuality constraints directly on the full two-qudit
  // space: the solution space must have dimension 2n = 4
  auto elems = full_space(2, 3).elements();
  std::map<Vec, size_t> idx;
  size_t k = 0;
  for (const auto& v : elems)
    if (!v.is_zero()) idx[v] = k++;
  std::vector<std::vector<fe>> rows;
  for (const auto& a : elems)
    for (const auto& b : elems) {
      if (a.is_zero() || b.is_zero() || (a + b).is_zero()) continue;
      if (symplectic_product(a, b) != 0) continue;
      std::vector<fe> row(k, 0);
      row[idx[a]] = normalize_mod(row[idx[a]] + 1, 3);
      row[idx[b]] = normalize_mod(row[idx[b]] + 1, 3);
      row[idx[a + b]] = normalize_mod(row[idx[a + b]] - 1, 3);
      rows.push_back(std::move(row));
    }
  auto sol = solve_mod(rows, std::vector<fe>(rows.size(), 0), 3);
  REQUIRE(sol.consistent);
  CHECK(sol.kernel.size() == 4);
}

TEST_CASE("phase point operators are Hermitian with trace 1") {
  std::mt19937_64 rng(29);
  auto sets = enumerate_cnc_sets(2, 3, 5, 120);
  int checked = 0;
  for (const auto& s : sets) {
    if (rng() % 11 != 0) continue;
    std::vector<fe> values(s.assignment_generators().size());
    for (auto& v : values) v = static_cast<fe>(rng() % 3);
    PhasePoint p{s, extend_assignment(s, values)};
    DenseOperator a = phase_point_operator(p);
    CHECK(max_abs(a - a.adjoint()) < kTol);
    CHECK(std::abs(a.trace().real() - 1.0) < kTol);
    CHECK(std::abs(a.trace().imag()) < kTol);
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("trivial point is the maximally mixed state") {
  CncSet zero = CncSet::subspace(Subspace(1, 3));
  PhasePoint p{zero, extend_assignment(zero, {})};
  DenseOperator a = phase_point_operator(p);
  CHECK(max_abs(a - DenseOperator::Identity(3, 3) / 3.0) < kTol);
}

TEST_CASE("wigner operators are orthogonal") {
  // Tr(A_u A_v) = d^n delta_{u,v}, all 81 pairs at n = 1
  std::vector<DenseOperator> ops;
  for (const auto& u : all_vectors(1, 3))
    ops.push_back(phase_point_operator(PhasePoint::wigner(u)));
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = 0; j < ops.size(); ++j) {
      double expect = i == j ? 3.0 : 0.0;
      CHECK(std::abs((ops[i] * ops[j]).trace().real() - expect) < kTol);
      CHECK(std::abs((ops[i] * ops[j]).trace().imag()) < kTol);
    }
}

TEST_CASE("wigner embedding matches the character formula") {
  // A_u = (1/d^n) sum_b w^{[u,b]} T_b entrywise
  for (const auto& u : all_vectors(1, 3)) {
    DenseOperator direct = DenseOperator::Zero(3, 3);
    for (const auto& b : all_vectors(1, 3))
      direct += omega_power(3, symplectic_product(u, b)) * pauli_matrix(b);
    direct /= 3.0;
    CHECK(max_abs(direct - phase_point_operator(PhasePoint::wigner(u))) < kTol);
  }
}

TEST_CASE("noncommuting construction") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{
           {1, 3}, {2, 3}, {3, 3}, {1, 5}, {2, 5}}) {
    auto gens = noncommuting_construction(n, d);
    CHECK(static_cast<int>(gens.size()) == d * n + 1);
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j)
        CHECK(symplectic_product(gens[i], gens[j]) != 0);
  }
  // n=1, d=3: representatives of the four lines covering E_1
  auto gens = noncommuting_construction(1, 3);
  std::set<Subspace> lines;
  for (const auto& g : gens) lines.insert(span({g}));
  CHECK(lines.size() == 4);
  std::set<Vec> covered;
  for (const auto& l : lines)
    for (const auto& v : l.elements()) covered.insert(v);
  CHECK(covered.size() == 9);
}

TEST_CASE("construction generators form a valid cone") {
  auto gens = noncommuting_construction(2, 3);
  CncSet c = CncSet::cone(Subspace(2, 3), gens);
  CHECK(c.form() == CncForm::ConeForm);
  CHECK(c.xi() == 7);
  CHECK(closure_check(c));
}

TEST_CASE("enumeration at n=1 d=3") {
  PhasePointEnumerator en(1, 3);
  std::set<std::pair<std::vector<Vec>, std::vector<fe>>> seen;
  uint64_t count = 0;
  uint64_t full_assignments = 0;
  uint64_t zero_sets = 0;
  while (auto p = en.next()) {
    ++count;
    if (p->set.element_count() == 9) ++full_assignments;
    if (p->set.element_count() == 1) ++zero_sets;
    // canonical-form dedup key
    auto key = std::make_pair(p->set.assignment_generators(), p->gamma.values());
    CHECK(seen.insert(key).second);
  }
  CHECK_FALSE(en.truncated());
  CHECK(zero_sets == 1);
  // the full set carries 3^4 = 81 assignments, one per covering line
  CHECK(full_assignments == 81);
  // total: 1 + 4*3 + 6*9 + 4*27 + 81 (regression constant)
  CHECK(count == 256);
}

TEST_CASE("enumeration respects caps") {
  Caps caps;
  caps.max_points = 40;
  PhasePointEnumerator en(1, 3, caps);
  uint64_t count = 0;
  while (auto p = en.next()) ++count;
  CHECK(count == 40);
  CHECK(en.truncated());
}

TEST_CASE("enumeration is deterministic") {
  auto run = [] {
    std::vector<std::vector<fe>> sig;
    PhasePointEnumerator en(1, 3);
    while (auto p = en.next()) sig.push_back(p->gamma.values());
    return sig;
  };
  CHECK(run() == run());
}
