#include "cnc/symplectic.hpp"

#include <algorithm>
#include <map>

namespace cnc {

bool is_odd_prime(int d) {
  if (d < 3 || d % 2 == 0) return false;
  for (int p = 3; p * p <= d; p += 2)
    if (d % p == 0) return false;
  return true;
}

void require_odd_prime(int d) {
  if (!is_odd_prime(d))
    throw std::invalid_argument("d must be an odd prime, got " +
                                std::to_string(d));
}

fe normalize_mod(int64_t v, int d) {
  int64_t r = v % d;
  if (r < 0) r += d;
  return static_cast<fe>(r);
}

fe inv_mod(fe v, int d) {
  v = normalize_mod(v, d);
  if (v == 0) throw std::invalid_argument("inverse of zero mod d");
  // extended Euclid
  int64_t a = v, b = d, x0 = 1, x1 = 0;
  while (b != 0) {
    int64_t q = a / b;
    int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return normalize_mod(x0, d);
}

fe half_mod(int d) { return static_cast<fe>((d + 1) / 2); }

// ---------------------------------------------------------------------------

Vec::Vec(int n_, int d_, std::vector<fe> coords) : d(d_), n(n_), c(std::move(coords)) {
  if (static_cast<int>(c.size()) != 2 * n)
    throw std::invalid_argument("vector needs 2n coordinates");
  for (auto& v : c) v = normalize_mod(v, d);
}

Vec Vec::unit_z(int n, int d, int k) {
  Vec v(n, d);
  v.c[k] = 1;
  return v;
}

Vec Vec::unit_x(int n, int d, int k) {
  Vec v(n, d);
  v.c[n + k] = 1;
  return v;
}

bool Vec::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](fe v) { return v == 0; });
}

static void require_match(const Vec& a, const Vec& b) {
  if (a.d != b.d || a.n != b.n)
    throw std::invalid_argument("dimension/modulus mismatch");
}

Vec Vec::operator+(const Vec& o) const {
  require_match(*this, o);
  Vec r(n, d);
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = normalize_mod(c[i] + o.c[i], d);
  return r;
}

Vec Vec::operator-(const Vec& o) const {
  require_match(*this, o);
  Vec r(n, d);
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = normalize_mod(c[i] - o.c[i], d);
  return r;
}

Vec Vec::scaled(fe s) const {
  Vec r(n, d);
  for (size_t i = 0; i < c.size(); ++i)
    r.c[i] = normalize_mod(int64_t(c[i]) * s, d);
  return r;
}

fe symplectic_product(const Vec& a, const Vec& b) {
  require_match(a, b);
  int64_t acc = 0;
  for (int k = 0; k < a.n; ++k)
    acc += int64_t(a.z(k)) * b.x(k) - int64_t(a.x(k)) * b.z(k);
  return normalize_mod(acc, a.d);
}

// ---------------------------------------------------------------------------
// RREF machinery

static void rref_rows(std::vector<std::vector<fe>>& rows, int d) {
  if (rows.empty()) return;
  size_t w = rows[0].size();
  size_t r = 0;
  for (size_t col = 0; col < w && r < rows.size(); ++col) {
    size_t piv = rows.size();
    for (size_t i = r; i < rows.size(); ++i)
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    fe inv = inv_mod(rows[r][col], d);
    for (auto& v : rows[r]) v = normalize_mod(int64_t(v) * inv, d);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      fe f = rows[i][col];
      for (size_t j = 0; j < w; ++j)
        rows[i][j] = normalize_mod(rows[i][j] - int64_t(f) * rows[r][j], d);
    }
    ++r;
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const std::vector<fe>& row) {
                              return std::all_of(row.begin(), row.end(),
                                                 [](fe v) { return v == 0; });
                            }),
             rows.end());
}

Subspace rref_build(int n, int d, std::vector<Vec> vs) {
  std::vector<std::vector<fe>> rows;
  rows.reserve(vs.size());
  for (auto& v : vs) rows.push_back(v.c);
  rref_rows(rows, d);
  Subspace s(n, d);
  for (auto& row : rows) s.rows_.push_back(Vec(n, d, row));
  return s;
}

Subspace Subspace::span_of(const std::vector<Vec>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("span of empty list");
  int n = vectors[0].n, d = vectors[0].d;
  for (const auto& v : vectors)
    if (v.n != n || v.d != d)
      throw std::invalid_argument("dimension/modulus mismatch");
  return rref_build(n, d, vectors);
}

Subspace span(const std::vector<Vec>& vectors) { return Subspace::span_of(vectors); }

Vec Subspace::reduce(const Vec& v) const {
  if (v.n != n_ || v.d != d_)
    throw std::invalid_argument("dimension/modulus mismatch");
  Vec r = v;
  for (const auto& row : rows_) {
    // pivot column of this row
    size_t p = 0;
    while (p < row.c.size() && row.c[p] == 0) ++p;
    if (p == row.c.size()) continue;
    fe f = r.c[p];  // row has 1 at pivot
    if (f == 0) continue;
    for (size_t j = 0; j < r.c.size(); ++j)
      r.c[j] = normalize_mod(r.c[j] - int64_t(f) * row.c[j], d_);
  }
  return r;
}

bool Subspace::contains(const Vec& v) const { return reduce(v).is_zero(); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& row : other.rows_)
    if (!contains(row)) return false;
  return true;
}

std::optional<std::vector<fe>> Subspace::coordinates(const Vec& v) const {
  if (rows_.empty())
    return v.is_zero() ? std::optional<std::vector<fe>>{std::vector<fe>{}}
                       : std::nullopt;
  // Solve basis^T alpha = v
  std::vector<std::vector<fe>> a(2 * n_, std::vector<fe>(rows_.size(), 0));
  for (size_t j = 0; j < rows_.size(); ++j)
    for (int i = 0; i < 2 * n_; ++i) a[i][j] = rows_[j].c[i];
  auto sol = solve_mod(a, v.c, d_);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

uint64_t Subspace::element_count() const {
  uint64_t r = 1;
  for (int i = 0; i < dim(); ++i) r *= d_;
  return r;
}

std::vector<Vec> Subspace::elements() const {
  std::vector<Vec> out;
  out.reserve(element_count());
  std::vector<fe> odo(dim(), 0);
  while (true) {
    Vec v(n_, d_);
    for (int i = 0; i < dim(); ++i)
      if (odo[i] != 0) v = v + rows_[i].scaled(odo[i]);
    out.push_back(v);
    int k = 0;
    while (k < dim() && ++odo[k] == d_) odo[k++] = 0;
    if (k == dim()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace orthogonal_complement(const Subspace& s) {
  // v is in S^perp iff for every basis row a: <a_z|v_x> - <a_x|v_z> = 0.
  // Coefficient row for v: (-a_x | a_z).
  int n = s.n(), d = s.d();
  if (s.dim() == 0) {
    std::vector<Vec> full;
    for (int k = 0; k < n; ++k) {
      full.push_back(Vec::unit_z(n, d, k));
      full.push_back(Vec::unit_x(n, d, k));
    }
    return span(full);
  }
  std::vector<std::vector<fe>> a;
  for (const auto& row : s.basis()) {
    std::vector<fe> coef(2 * n, 0);
    for (int k = 0; k < n; ++k) {
      coef[k] = normalize_mod(-row.x(k), d);
      coef[n + k] = row.z(k);
    }
    a.push_back(std::move(coef));
  }
  auto sol = solve_mod(a, std::vector<fe>(a.size(), 0), d);
  std::vector<Vec> basis;
  for (auto& kv : sol.kernel) basis.push_back(Vec(n, d, kv));
  if (basis.empty()) return Subspace(n, d);
  return span(basis);
}

bool is_isotropic(const Subspace& s) {
  const auto& b = s.basis();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (symplectic_product(b[i], b[j]) != 0) return false;
  return true;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n() || a.d() != b.d())
    throw std::invalid_argument("dimension/modulus mismatch");
  int n = a.n(), d = a.d();
  if (a.dim() == 0 || b.dim() == 0) return Subspace(n, d);
  // x = sum alpha_i a_i with reduce_b(x) = 0; reduction is linear.
  std::vector<Vec> red;
  for (const auto& row : a.basis()) red.push_back(b.reduce(row));
  std::vector<std::vector<fe>> m(2 * n, std::vector<fe>(a.dim(), 0));
  for (int j = 0; j < a.dim(); ++j)
    for (int i = 0; i < 2 * n; ++i) m[i][j] = red[j].c[i];
  auto sol = solve_mod(m, std::vector<fe>(2 * n, 0), d);
  std::vector<Vec> basis;
  for (auto& alpha : sol.kernel) {
    Vec v(n, d);
    for (int j = 0; j < a.dim(); ++j)
      if (alpha[j] != 0) v = v + a.basis()[j].scaled(alpha[j]);
    basis.push_back(v);
  }
  if (basis.empty()) return Subspace(n, d);
  return span(basis);
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.n() != b.n() || a.d() != b.d())
    throw std::invalid_argument("dimension/modulus mismatch");
  std::vector<Vec> all = a.basis();
  all.insert(all.end(), b.basis().begin(), b.basis().end());
  if (all.empty()) return Subspace(a.n(), a.d());
  return span(all);
}

Subspace radical(const Subspace& s) {
  if (s.dim() == 0) return s;
  return intersect(s, orthogonal_complement(s));
}

int symplectic_rank(const Subspace& s) { return s.dim() - radical(s).dim(); }

// ---------------------------------------------------------------------------

LinearSolution solve_mod(const std::vector<std::vector<fe>>& a,
                         const std::vector<fe>& b, int d) {
  size_t m = a.size();
  size_t k = m == 0 ? 0 : a[0].size();
  // augmented matrix
  std::vector<std::vector<fe>> aug(m, std::vector<fe>(k + 1, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = normalize_mod(a[i][j], d);
    aug[i][k] = normalize_mod(b[i], d);
  }
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t col = 0; col < k && r < m; ++col) {
    size_t piv = m;
    for (size_t i = r; i < m; ++i)
      if (aug[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    std::swap(aug[r], aug[piv]);
    fe inv = inv_mod(aug[r][col], d);
    for (auto& v : aug[r]) v = normalize_mod(int64_t(v) * inv, d);
    for (size_t i = 0; i < m; ++i) {
      if (i == r || aug[i][col] == 0) continue;
      fe f = aug[i][col];
      for (size_t j = 0; j <= k; ++j)
        aug[i][j] = normalize_mod(aug[i][j] - int64_t(f) * aug[r][j], d);
    }
    pivot_col.push_back(static_cast<int>(col));
    ++r;
  }
  LinearSolution out;
  for (size_t i = r; i < m; ++i)
    if (aug[i][k] != 0) return out;  // inconsistent
  out.consistent = true;
  out.particular.assign(k, 0);
  for (size_t i = 0; i < pivot_col.size(); ++i)
    out.particular[pivot_col[i]] = aug[i][k];
  // kernel basis: one vector per free column
  std::vector<bool> is_pivot(k, false);
  for (int pc : pivot_col) is_pivot[pc] = true;
  for (size_t col = 0; col < k; ++col) {
    if (is_pivot[col]) continue;
    std::vector<fe> kv(k, 0);
    kv[col] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i)
      kv[pivot_col[i]] = normalize_mod(-aug[i][col], d);
    out.kernel.push_back(std::move(kv));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::set<Vec> orthogonal_closure(const std::set<Vec>& seed, std::size_t cap) {
  std::set<Vec> s = seed;
  if (s.empty()) return s;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Vec> cur(s.begin(), s.end());
    for (size_t i = 0; i < cur.size(); ++i) {
      for (size_t j = i; j < cur.size(); ++j) {
        if (symplectic_product(cur[i], cur[j]) != 0) continue;
        Vec sum = cur[i] + cur[j];
        if (s.insert(sum).second) {
          changed = true;
          if (s.size() > cap)
            throw ClosureCapExceeded("orthogonal closure exceeded cap " +
                                     std::to_string(cap));
        }
      }
    }
  }
  return s;
}

std::vector<Vec> all_vectors(int n, int d) {
  std::vector<Vec> out;
  std::vector<fe> odo(2 * n, 0);
  while (true) {
    out.push_back(Vec(n, d, odo));
    int k = 2 * n - 1;
    while (k >= 0 && ++odo[k] == d) odo[k--] = 0;
    if (k < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> all_subspaces(int n, int d) {
  // BFS: extend known subspaces by each vector, dedup on the canonical form.
  std::set<Subspace> seen;
  seen.insert(Subspace(n, d));
  auto vectors = all_vectors(n, d);
  std::vector<Subspace> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& s : frontier) {
      for (const auto& v : vectors) {
        if (v.is_zero() || s.contains(v)) continue;
        std::vector<Vec> gens = s.basis();
        gens.push_back(v);
        Subspace bigger = span(gens);
        if (seen.insert(bigger).second) next.push_back(bigger);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subspace> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis() < b.basis();
  });
  return out;
}

std::vector<Subspace> all_isotropic_subspaces(int n, int d) {
  std::vector<Subspace> out;
  for (const auto& s : all_subspaces(n, d))
    if (is_isotropic(s)) out.push_back(s);
  return out;
}

}  // namespace cnc
