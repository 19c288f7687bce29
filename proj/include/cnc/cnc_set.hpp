// Closed-under-inference sets of Pauli labels, noncontextual value
// assignments, and phase-space point operators.
//
// A set Omega in E that is closed under inference is either
//   (i)  a subspace of E, or
//   (ii) a union of coset subspaces <a_k, I> over an isotropic core I,
//        with pairwise non-commuting generators a_k in I^perp \ I.
//
// The two cases overlap: a union of d+1 coset lines covering a rank-2
// plane over the core is closed under addition and so is also a
// subspace.  Canonically we tag any set closed under addition as
// SubspaceForm; the cone tag is reserved for genuine non-subspace
// unions.  Internally three structures are used, because the shape of
// the value assignments differs:
//
//   LinearSubspace  subspace with symplectic rank 0 or >= 4; every
//                   noncontextual assignment is linear, stored on the
//                   basis rows.
//   PlaneSubspace   subspace of rank exactly 2; assignments are linear
//                   on each of the d+1 coset lines over the radical but
//                   need not be linear globally.  Stored on a radical
//                   basis plus one canonical representative per line.
//   Cone            case (ii) proper; stored on a core basis plus the
//                   canonical generators.
//
// Canonical generator representatives: reduce the generator modulo the
// core (zeroing pivot coordinates), then take the lexicographically
// least nonzero scalar multiple.  This makes equality and deduplication
// exact.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cnc/config.hpp"
#include "cnc/pauli.hpp"
#include "cnc/symplectic.hpp"

namespace cnc {

enum class CncForm { SubspaceForm, ConeForm };
enum class CncKind { LinearSubspace, PlaneSubspace, Cone };

// Canonical representative of the punctured pencil {s*g + w : s != 0, w in core}.
Vec pencil_canonical(const Vec& g, const Subspace& core);

class CncSet {
 public:
  CncSet() = default;  // the zero set of a one-qutrit system

  // Canonical constructors.
  static CncSet subspace(const Subspace& s);
  // Builds from an isotropic core and generator list; collapses to a
  // subspace when xi <= 1 or when the union is closed under addition.
  static CncSet cone(const Subspace& core, std::vector<Vec> generators);
  // Canonical form of a set of elements closed under inference; throws
  // std::invalid_argument when the input is not closed.
  static CncSet classify(const std::vector<Vec>& closed_elements);

  CncForm form() const {
    return kind_ == CncKind::Cone ? CncForm::ConeForm : CncForm::SubspaceForm;
  }
  CncKind kind() const { return kind_; }
  int n() const { return core_.n(); }
  int d() const { return core_.d(); }

  // Isotropic core: the cone core, the radical for PlaneSubspace, or the
  // space itself for an isotropic LinearSubspace.
  const Subspace& core() const { return core_; }
  const std::vector<Vec>& generators() const { return gens_; }
  int xi() const { return static_cast<int>(gens_.size()); }

  // The full subspace for subspace forms; throws for cones.
  const Subspace& space() const;

  // Generators on which a value assignment is stored: basis rows for
  // LinearSubspace, core basis followed by coset generators otherwise.
  std::vector<Vec> assignment_generators() const;
  // d^(number of assignment generators)
  uint64_t assignment_count() const;

  bool contains(const Vec& v) const;
  uint64_t element_count() const;
  std::vector<Vec> elements() const;  // sorted, each element exactly once

  auto operator<=>(const CncSet&) const = default;

 private:
  CncSet(CncKind k, Subspace core, std::vector<Vec> gens, Subspace space)
      : kind_(k), core_(std::move(core)), gens_(std::move(gens)),
        space_(std::move(space)) {}

  CncKind kind_ = CncKind::LinearSubspace;
  Subspace core_{1, 3};       // isotropic core (see core())
  std::vector<Vec> gens_;     // canonical coset generators, sorted
  Subspace space_{1, 3};      // full subspace for subspace forms
};

// Structural + mathematical validation of a loosely described set, used
// for ingested data and for tests.  Returns false with a reason instead
// of throwing.
struct ValidationResult {
  bool ok = true;
  std::string reason;
};
ValidationResult validate_cone(const Subspace& core,
                               const std::vector<Vec>& generators);
// Cross-check against the brute-force closure oracle (desk scale).
bool closure_check(const CncSet& set, std::size_t cap = kDefaultClosureCap);

// ---------------------------------------------------------------------------
// Value assignments gamma : Omega -> Z_d, additive on orthogonal pairs.

class ValueAssignment {
 public:
  ValueAssignment() = default;
  // values match set.assignment_generators()
  ValueAssignment(const CncSet& set, std::vector<fe> values);

  const std::vector<fe>& values() const { return values_; }
  fe eval(const CncSet& set, const Vec& v) const;
  // True iff gamma extends to a linear functional [., u] on E.
  bool is_linear(const CncSet& set) const;

  auto operator<=>(const ValueAssignment&) const = default;

 private:
  std::vector<fe> values_;
};

ValueAssignment extend_assignment(const CncSet& set, std::vector<fe> values);

struct PhasePoint {
  CncSet set;
  ValueAssignment gamma;

  int n() const { return set.n(); }
  int d() const { return set.d(); }
  fe gamma_of(const Vec& v) const { return gamma.eval(set, v); }

  // The Wigner point (Omega = E, gamma(b) = [b,u]).
  static PhasePoint wigner(const Vec& u);

  auto operator<=>(const PhasePoint&) const = default;
};

// A_Omega^gamma = (1/d^n) sum_{b in Omega} w^{-gamma(b)} T_b
DenseOperator phase_point_operator(const PhasePoint& p,
                                   int cap = kDefaultDenseCap);

// Evaluate gamma as a function defined by an arbitrary callable over the
// set's assignment generators (used when rebuilding canonical points).
ValueAssignment assignment_from_function(
    const CncSet& set, const std::function<fe(const Vec&)>& gamma);

// ---------------------------------------------------------------------------
// dn+1 pairwise non-orthogonal generators built from the d+1 line
// covering of E_1 stacked in a triangular pattern.
std::vector<Vec> noncommuting_construction(int n, int d);

// The d+1 canonical line representatives covering E_1 (as n=1 vectors).
std::vector<Vec> line_covering(int d);

// ---------------------------------------------------------------------------
// Enumeration at desk scale.

// All canonical CNC sets with xi <= max_xi (subspace forms first, then
// cones ordered by core and generator list).  max_sets == 0 means no cap.
std::vector<CncSet> enumerate_cnc_sets(int n, int d, int max_xi,
                                       uint64_t max_sets = 0,
                                       bool* truncated = nullptr);

class PhasePointEnumerator {
 public:
  PhasePointEnumerator(int n, int d, Caps caps = {});

  std::optional<PhasePoint> next();
  bool truncated() const { return truncated_; }
  uint64_t produced() const { return produced_; }
  const Caps& caps() const { return caps_; }

 private:
  int n_, d_;
  Caps caps_;
  std::vector<CncSet> sets_;
  std::size_t set_idx_ = 0;
  std::vector<fe> odometer_;
  bool odometer_done_ = false;
  uint64_t produced_ = 0;
  bool truncated_ = false;
  bool sets_truncated_ = false;
};

}  // namespace cnc
