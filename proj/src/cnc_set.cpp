#include "cnc/cnc_set.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cnc {

Vec pencil_canonical(const Vec& g, const Subspace& core) {
  Vec r = core.reduce(g);
  if (r.is_zero())
    throw std::invalid_argument("generator lies in the core subspace");
  Vec best = r;
  for (fe s = 2; s < g.d; ++s) {
    Vec cand = r.scaled(s);
    if (cand < best) best = cand;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Canonical constructors

static std::vector<Vec> plane_line_reps(const Subspace& s, const Subspace& rad) {
  // Pick two basis rows with nonzero product; they span the quotient plane.
  const auto& b = s.basis();
  int xi = -1, yi = -1;
  for (size_t i = 0; i < b.size() && xi < 0; ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (symplectic_product(b[i], b[j]) != 0) {
        xi = static_cast<int>(i);
        yi = static_cast<int>(j);
        break;
      }
  if (xi < 0) throw std::logic_error("rank-2 subspace without a noncommuting pair");
  const Vec& x = b[xi];
  const Vec& y = b[yi];
  std::vector<Vec> reps;
  reps.push_back(pencil_canonical(y, rad));
  for (fe lam = 0; lam < s.d(); ++lam)
    reps.push_back(pencil_canonical(x + y.scaled(lam), rad));
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  if (static_cast<int>(reps.size()) != s.d() + 1)
    throw std::logic_error("plane decomposition did not yield d+1 lines");
  return reps;
}

CncSet CncSet::subspace(const Subspace& s) {
  Subspace rad = radical(s);
  int rank = s.dim() - rad.dim();
  if (rank == 2)
    return CncSet(CncKind::PlaneSubspace, rad, plane_line_reps(s, rad), s);
  return CncSet(CncKind::LinearSubspace, rad, {}, s);
}

CncSet CncSet::cone(const Subspace& core, std::vector<Vec> generators) {
  if (!is_isotropic(core))
    throw std::invalid_argument("cone core must be isotropic");
  Subspace perp = orthogonal_complement(core);
  std::vector<Vec> reps;
  for (const auto& g : generators) {
    if (!perp.contains(g))
      throw std::invalid_argument("cone generator outside core complement");
    reps.push_back(pencil_canonical(g, core));  // throws if g in core
  }
  std::sort(reps.begin(), reps.end());
  if (std::adjacent_find(reps.begin(), reps.end()) != reps.end())
    throw std::invalid_argument("two generators share a coset line");
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      if (symplectic_product(reps[i], reps[j]) == 0)
        throw std::invalid_argument("cone generators must pairwise non-commute");

  int d = core.d();
  if (reps.size() <= 1 ||
      (static_cast<int>(reps.size()) == d + 1 && [&] {
        std::vector<Vec> all = core.basis();
        all.insert(all.end(), reps.begin(), reps.end());
        return span(all).dim() == core.dim() + 2;  // union closed under addition
      }())) {
    std::vector<Vec> all = core.basis();
    all.insert(all.end(), reps.begin(), reps.end());
    if (all.empty()) return subspace(Subspace(core.n(), core.d()));
    return subspace(span(all));
  }
  return CncSet(CncKind::Cone, core, std::move(reps),
                Subspace(core.n(), core.d()));
}

CncSet CncSet::classify(const std::vector<Vec>& closed_elements) {
  if (closed_elements.empty())
    throw std::invalid_argument("classify: empty element set");
  std::set<Vec> elems(closed_elements.begin(), closed_elements.end());
  int n = elems.begin()->n, d = elems.begin()->d;
  Subspace s = span(std::vector<Vec>(elems.begin(), elems.end()));
  if (elems.size() == s.element_count()) return subspace(s);

  // Not closed under addition: must be a cone.  Core = elements commuting
  // with everything in the set.
  std::vector<Vec> core_vecs;
  for (const auto& v : elems) {
    bool central = true;
    for (const auto& w : elems)
      if (symplectic_product(v, w) != 0) {
        central = false;
        break;
      }
    if (central) core_vecs.push_back(v);
  }
  Subspace core = core_vecs.empty() ? Subspace(n, d) : span(core_vecs);
  if (core_vecs.size() != core.element_count())
    throw std::invalid_argument("classify: input not closed under inference");

  std::map<Vec, uint64_t> petals;
  for (const auto& v : elems) {
    if (core.contains(v)) continue;
    petals[pencil_canonical(v, core)]++;
  }
  uint64_t per_petal = uint64_t(d - 1) * core.element_count();
  for (const auto& [rep, count] : petals)
    if (count != per_petal)
      throw std::invalid_argument("classify: input not closed under inference");
  std::vector<Vec> gens;
  for (const auto& [rep, count] : petals) gens.push_back(rep);
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (symplectic_product(gens[i], gens[j]) == 0)
        throw std::invalid_argument("classify: input not closed under inference");
  CncSet result = cone(core, gens);
  if (result.element_count() != elems.size())
    throw std::invalid_argument("classify: input not closed under inference");
  return result;
}

// ---------------------------------------------------------------------------

const Subspace& CncSet::space() const {
  if (kind_ == CncKind::Cone)
    throw std::logic_error("cone form has no single spanning subspace");
  return space_;
}

std::vector<Vec> CncSet::assignment_generators() const {
  if (kind_ == CncKind::LinearSubspace) return space_.basis();
  std::vector<Vec> out = core_.basis();
  out.insert(out.end(), gens_.begin(), gens_.end());
  return out;
}

uint64_t CncSet::assignment_count() const {
  uint64_t r = 1;
  size_t k = kind_ == CncKind::LinearSubspace
                 ? space_.basis().size()
                 : core_.basis().size() + gens_.size();
  for (size_t i = 0; i < k; ++i) r *= d();
  return r;
}

bool CncSet::contains(const Vec& v) const {
  if (kind_ != CncKind::Cone) return space_.contains(v);
  Vec r = core_.reduce(v);
  if (r.is_zero()) return true;
  for (const auto& g : gens_)
    for (fe s = 1; s < d(); ++s)
      if (g.scaled(s) == r) return true;
  return false;
}

uint64_t CncSet::element_count() const {
  if (kind_ != CncKind::Cone) return space_.element_count();
  return (uint64_t(xi()) * (d() - 1) + 1) * core_.element_count();
}

std::vector<Vec> CncSet::elements() const {
  if (kind_ != CncKind::Cone) return space_.elements();
  std::vector<Vec> out = core_.elements();
  for (const auto& g : gens_)
    for (fe s = 1; s < d(); ++s)
      for (const auto& w : core_.elements()) out.push_back(g.scaled(s) + w);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

ValidationResult validate_cone(const Subspace& core,
                               const std::vector<Vec>& generators) {
  if (!is_isotropic(core)) return {false, "core is not isotropic"};
  Subspace perp = orthogonal_complement(core);
  for (const auto& g : generators) {
    if (core.contains(g)) return {false, "generator lies in the core"};
    if (!perp.contains(g))
      return {false, "generator does not commute with the core"};
  }
  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = i + 1; j < generators.size(); ++j)
      if (symplectic_product(generators[i], generators[j]) == 0)
        return {false, "generators " + std::to_string(i) + " and " +
                           std::to_string(j) + " commute"};
  return {};
}

bool closure_check(const CncSet& set, std::size_t cap) {
  auto elems = set.elements();
  std::set<Vec> seed(elems.begin(), elems.end());
  return orthogonal_closure(seed, cap) == seed;
}

// ---------------------------------------------------------------------------

ValueAssignment::ValueAssignment(const CncSet& set, std::vector<fe> values)
    : values_(std::move(values)) {
  if (values_.size() != set.assignment_generators().size())
    throw std::invalid_argument("one value per assignment generator required");
  for (auto& v : values_) v = normalize_mod(v, set.d());
}

fe ValueAssignment::eval(const CncSet& set, const Vec& v) const {
  int d = set.d();
  auto core_eval = [&](const Vec& w) -> fe {
    auto coords = set.core().coordinates(w);
    if (!coords) throw std::invalid_argument("value assignment: vector outside set");
    int64_t acc = 0;
    for (size_t i = 0; i < coords->size(); ++i)
      acc += int64_t((*coords)[i]) * values_[i];
    return normalize_mod(acc, d);
  };
  if (set.kind() == CncKind::LinearSubspace) {
    auto coords = set.space().coordinates(v);
    if (!coords) throw std::invalid_argument("value assignment: vector outside set");
    int64_t acc = 0;
    for (size_t i = 0; i < coords->size(); ++i)
      acc += int64_t((*coords)[i]) * values_[i];
    return normalize_mod(acc, d);
  }
  Vec r = set.core().reduce(v);
  if (r.is_zero()) return core_eval(v);
  size_t base = set.core().basis().size();
  for (size_t k = 0; k < set.generators().size(); ++k) {
    const Vec& g = set.generators()[k];
    for (fe s = 1; s < d; ++s) {
      if (g.scaled(s) == r) {
        Vec w = v - g.scaled(s);
        return normalize_mod(int64_t(s) * values_[base + k] + core_eval(w), d);
      }
    }
  }
  throw std::invalid_argument("value assignment: vector outside set");
}

bool ValueAssignment::is_linear(const CncSet& set) const {
  // gamma is linear iff gamma(g) = [u,g] is solvable for u; the
  // coefficient row of u for a fixed g is (g_x | -g_z).
  auto gens = set.assignment_generators();
  int n = set.n(), d = set.d();
  std::vector<std::vector<fe>> a;
  std::vector<fe> b;
  for (size_t i = 0; i < gens.size(); ++i) {
    std::vector<fe> row(2 * n, 0);
    for (int k = 0; k < n; ++k) {
      row[k] = gens[i].x(k);
      row[n + k] = normalize_mod(-gens[i].z(k), d);
    }
    a.push_back(std::move(row));
    b.push_back(values_[i]);
  }
  return solve_mod(a, b, d).consistent;
}

ValueAssignment extend_assignment(const CncSet& set, std::vector<fe> values) {
  return ValueAssignment(set, std::move(values));
}

ValueAssignment assignment_from_function(
    const CncSet& set, const std::function<fe(const Vec&)>& gamma) {
  std::vector<fe> values;
  for (const auto& g : set.assignment_generators()) values.push_back(gamma(g));
  return ValueAssignment(set, std::move(values));
}

PhasePoint PhasePoint::wigner(const Vec& u) {
  int n = u.n, d = u.d;
  std::vector<Vec> units;
  for (int k = 0; k < n; ++k) {
    units.push_back(Vec::unit_z(n, d, k));
    units.push_back(Vec::unit_x(n, d, k));
  }
  CncSet full = CncSet::subspace(span(units));
  ValueAssignment gamma = assignment_from_function(
      full, [&](const Vec& g) { return symplectic_product(g, u); });
  return PhasePoint{full, gamma};
}

DenseOperator phase_point_operator(const PhasePoint& p, int cap) {
  int n = p.n(), d = p.d();
  int64_t dim = dense_dim(n, d, cap);
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  for (const auto& b : p.set.elements())
    acc += omega_power(d, -p.gamma_of(b)) * pauli_matrix(b, cap);
  double dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  return acc / dn;
}

// ---------------------------------------------------------------------------

std::vector<Vec> line_covering(int d) {
  require_odd_prime(d);
  std::vector<Vec> out;
  out.push_back(Vec(1, d, {1, 0}));
  out.push_back(Vec(1, d, {0, 1}));
  for (fe k = 1; k < d; ++k) out.push_back(Vec(1, d, {1, k}));
  return out;  // d+1 lines, pairwise non-orthogonal
}

std::vector<Vec> noncommuting_construction(int n, int d) {
  require_odd_prime(d);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  auto c = line_covering(d);
  auto put = [&](Vec& v, int qudit, const Vec& e1) {
    v.c[qudit] = e1.c[0];
    v.c[n + qudit] = e1.c[1];
  };
  std::vector<Vec> out;
  for (int row = 0; row < n; ++row) {
    for (int j = 0; j < d; ++j) {
      Vec v(n, d);
      for (int k = 0; k < row; ++k) put(v, k, c[d]);
      put(v, row, c[j]);
      out.push_back(v);
    }
  }
  Vec v(n, d);
  for (int k = 0; k < n; ++k) put(v, k, c[d]);
  out.push_back(v);
  return out;  // dn+1 vectors
}

// ---------------------------------------------------------------------------
// Enumeration

static void enumerate_cliques(const std::vector<std::vector<bool>>& adj,
                              std::vector<int>& current, int start, int max_size,
                              uint64_t max_sets, uint64_t& emitted,
                              bool* truncated,
                              const std::function<void(const std::vector<int>&)>& emit) {
  if (max_sets > 0 && emitted >= max_sets) {
    if (truncated) *truncated = true;
    return;
  }
  for (int v = start; v < static_cast<int>(adj.size()); ++v) {
    bool ok = true;
    for (int u : current)
      if (!adj[u][v]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    current.push_back(v);
    if (current.size() >= 2) {
      emit(current);
      ++emitted;
      if (max_sets > 0 && emitted >= max_sets) {
        if (truncated) *truncated = true;
        current.pop_back();
        return;
      }
    }
    if (static_cast<int>(current.size()) < max_size)
      enumerate_cliques(adj, current, v + 1, max_size, max_sets, emitted,
                        truncated, emit);
    current.pop_back();
  }
}

std::vector<CncSet> enumerate_cnc_sets(int n, int d, int max_xi,
                                       uint64_t max_sets, bool* truncated) {
  require_odd_prime(d);
  if (truncated) *truncated = false;
  std::vector<CncSet> out;
  for (const auto& s : all_subspaces(n, d)) out.push_back(CncSet::subspace(s));

  for (const auto& core : all_isotropic_subspaces(n, d)) {
    if (2 * (n - core.dim()) < 2) continue;  // no room for generators
    Subspace perp = orthogonal_complement(core);
    std::set<Vec> reps;
    for (const auto& v : perp.elements())
      if (!core.contains(v)) reps.insert(pencil_canonical(v, core));
    std::vector<Vec> verts(reps.begin(), reps.end());
    std::vector<std::vector<bool>> adj(verts.size(),
                                       std::vector<bool>(verts.size(), false));
    for (size_t i = 0; i < verts.size(); ++i)
      for (size_t j = i + 1; j < verts.size(); ++j)
        adj[i][j] = adj[j][i] = symplectic_product(verts[i], verts[j]) != 0;

    std::vector<int> current;
    uint64_t emitted = out.size();
    enumerate_cliques(
        adj, current, 0, max_xi, max_sets, emitted, truncated,
        [&](const std::vector<int>& clique) {
          std::vector<Vec> gens;
          for (int idx : clique) gens.push_back(verts[idx]);
          // Skip unions closed under addition; those are subspaces and
          // were already produced above.
          if (static_cast<int>(gens.size()) == d + 1) {
            std::vector<Vec> all = core.basis();
            all.insert(all.end(), gens.begin(), gens.end());
            if (span(all).dim() == core.dim() + 2) return;
          }
          out.push_back(CncSet::cone(core, gens));
        });
    if (truncated && *truncated) break;
  }
  return out;
}

PhasePointEnumerator::PhasePointEnumerator(int n, int d, Caps caps)
    : n_(n), d_(d), caps_(caps) {
  sets_ = enumerate_cnc_sets(n, d, caps.effective_max_xi(n, d),
                             caps.max_points, &sets_truncated_);
  if (!sets_.empty()) odometer_.assign(sets_[0].assignment_generators().size(), 0);
}

std::optional<PhasePoint> PhasePointEnumerator::next() {
  while (set_idx_ < sets_.size()) {
    if (produced_ >= caps_.max_points) {
      truncated_ = true;
      return std::nullopt;
    }
    if (odometer_done_) {
      ++set_idx_;
      odometer_done_ = false;
      if (set_idx_ >= sets_.size()) break;
      odometer_.assign(sets_[set_idx_].assignment_generators().size(), 0);
      continue;
    }
    const CncSet& set = sets_[set_idx_];
    PhasePoint p{set, ValueAssignment(set, odometer_)};
    // advance odometer
    size_t k = 0;
    while (k < odometer_.size() && ++odometer_[k] == d_) odometer_[k++] = 0;
    if (k == odometer_.size()) odometer_done_ = true;
    ++produced_;
    return p;
  }
  if (sets_truncated_) truncated_ = true;
  return std::nullopt;
}

}  // namespace cnc
