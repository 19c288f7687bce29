// Symplectic linear algebra over the prime field Z_d, d an odd prime.
//
// Vectors live in E = Z_d^{2n} with coordinates stored as
// [z_1..z_n, x_1..x_n].  The symplectic product
//
//     [a,b] = <a_z|b_x> - <a_x|b_z>   (mod d)
//
// gives the commutation phase of the generalized Pauli operators labeled
// by a and b.  Subspaces are kept in reduced row-echelon form, which is
// the unique canonical representative and makes equality tests cheap.

#pragma once

#include <cstdint>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnc {

using fe = int32_t;  // field element, always reduced to 0..d-1

bool is_odd_prime(int d);
void require_odd_prime(int d);

fe normalize_mod(int64_t v, int d);
fe inv_mod(fe v, int d);  // multiplicative inverse, v != 0
fe half_mod(int d);       // 2^{-1} mod d

// ---------------------------------------------------------------------------
// SymplecticVector

struct Vec {
  int d = 3;
  int n = 1;
  std::vector<fe> c;  // length 2n, [z | x]

  Vec() = default;
  Vec(int n_, int d_) : d(d_), n(n_), c(2 * n_, 0) {}
  Vec(int n_, int d_, std::vector<fe> coords);

  static Vec unit_z(int n, int d, int k);  // e_k
  static Vec unit_x(int n, int d, int k);  // f_k

  fe z(int k) const { return c[k]; }
  fe x(int k) const { return c[n + k]; }
  bool is_zero() const;

  Vec operator+(const Vec& o) const;
  Vec operator-(const Vec& o) const;
  Vec scaled(fe s) const;

  auto operator<=>(const Vec&) const = default;
};

// [a,b]; throws on (n,d) mismatch.
fe symplectic_product(const Vec& a, const Vec& b);

// ---------------------------------------------------------------------------
// SymplecticSubspace: canonical RREF basis

class Subspace {
 public:
  Subspace(int n, int d) : n_(n), d_(d) {}  // zero subspace

  static Subspace span_of(const std::vector<Vec>& vectors);

  int n() const { return n_; }
  int d() const { return d_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec>& basis() const { return rows_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  // Canonical coset representative: v reduced modulo the subspace.  The
  // reduction zeroes v at every pivot column, which is also the
  // lexicographically least element of v + S.
  Vec reduce(const Vec& v) const;

  // Coordinates of v in the basis rows, if v is contained.
  std::optional<std::vector<fe>> coordinates(const Vec& v) const;

  uint64_t element_count() const;            // d^dim
  std::vector<Vec> elements() const;         // materialized, desk scale only

  auto operator<=>(const Subspace&) const = default;

 private:
  int n_, d_;
  std::vector<Vec> rows_;  // RREF, pivot columns strictly increasing
  friend Subspace rref_build(int n, int d, std::vector<Vec> rows);
};

Subspace span(const std::vector<Vec>& vectors);  // throws on empty input
Subspace orthogonal_complement(const Subspace& s);
bool is_isotropic(const Subspace& s);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

// radical(S) = S ∩ S^⊥: the null space of the symplectic form restricted
// to S.  rank(S) = dim S - dim radical(S) is always even.
Subspace radical(const Subspace& s);
int symplectic_rank(const Subspace& s);

// ---------------------------------------------------------------------------
// Dense linear algebra mod d (shared by several modules)

struct LinearSolution {
  bool consistent = false;
  std::vector<fe> particular;                // one solution
  std::vector<std::vector<fe>> kernel;       // basis of homogeneous solutions
};

// Solve A x = b over Z_d; A is row-major m x k.
LinearSolution solve_mod(const std::vector<std::vector<fe>>& a,
                         const std::vector<fe>& b, int d);

// ---------------------------------------------------------------------------
// Closure under inference (brute-force oracle)
//
// The smallest superset of the seed containing a+b for every orthogonal
// pair a,b it contains.  Materializes the whole set, so it is intended
// for desk-scale cross-checks, not production updates.

struct ClosureCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::set<Vec> orthogonal_closure(const std::set<Vec>& seed,
                                 std::size_t cap = 6561);

// All of E = Z_d^{2n}, in lexicographic order.  Desk scale only.
std::vector<Vec> all_vectors(int n, int d);

// All subspaces of E, ordered by (dim, basis).  Desk scale only.
std::vector<Subspace> all_subspaces(int n, int d);
std::vector<Subspace> all_isotropic_subspaces(int n, int d);

}  // namespace cnc
