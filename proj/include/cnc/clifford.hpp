// Clifford group elements as symplectic-affine data (S, b), acting on
// Pauli labels by a -> S a with conjugation phase Phi(a) = [b, S a]:
//
//     g T_a g^dag = w^{[b, S a]} T_{S a}.
//
// For odd d the Weil-type representation of the symplectic part carries
// no extra phase under the T_a convention, so the whole phase lives in
// the Pauli translation part b.  Dense unitaries exist at desk scale:
// named gates have explicit matrices, arbitrary (S, b) elements get the
// (phase-normalized) intertwiner solved from the conjugation relations.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cnc/cnc_set.hpp"
#include "cnc/pauli.hpp"
#include "cnc/symplectic.hpp"

namespace cnc {

// 2n x 2n matrix over Z_d.
struct ModMatrix {
  int d = 3;
  int size = 2;
  std::vector<std::vector<fe>> m;  // row-major

  static ModMatrix identity(int size, int d);
  Vec apply(const Vec& v) const;
  ModMatrix mul(const ModMatrix& o) const;
  ModMatrix inverse() const;  // throws if singular

  auto operator<=>(const ModMatrix&) const = default;
};

bool is_symplectic(const ModMatrix& s, int n);

struct CliffordElement {
  int n = 1;
  int d = 3;
  ModMatrix s;  // symplectic part
  Vec b;        // Pauli translation part

  static CliffordElement identity(int n, int d);
  // Throws std::invalid_argument if s is not symplectic.
  static CliffordElement from_parts(ModMatrix s, Vec b);

  Vec apply_label(const Vec& a) const { return s.apply(a); }
  fe phase_of(const Vec& a) const;  // Phi(a) = [b, S a]

  auto operator<=>(const CliffordElement&) const = default;
};

enum class GateName { F, P, SUM, X, Z };
GateName gate_name_from_string(const std::string& name);
std::string to_string(GateName g);

// Named generators.  F and P act on one qudit; SUM takes (control,
// target); X and Z take a power parameter (default 1).
CliffordElement gate(GateName name, const std::vector<int>& qudits, int n,
                     int d, int param = 1);

CliffordElement compose(const CliffordElement& g, const CliffordElement& h);
CliffordElement inverse(const CliffordElement& g);

// Textbook dense unitary of a named gate (independent of the (S, b) data;
// used to cross-check the conjugation action).
DenseOperator gate_unitary(GateName name, const std::vector<int>& qudits, int n,
                           int d, int param = 1, int cap = kDefaultDenseCap);

// Dense unitary of an arbitrary element, solved from
// U T_v = T_{S v} U on the standard generators, times T_b.
DenseOperator dense_unitary(const CliffordElement& g, int cap = kDefaultDenseCap);

// (g.Omega, g.gamma) with g.gamma(S a) = gamma(a) - Phi(a).  Preserves the
// form tag, the core dimension and the generator count.
PhasePoint act_on_phase_point(const CliffordElement& g, const PhasePoint& p);

// Wigner label update u -> S u + b.
Vec act_on_wigner_label(const CliffordElement& g, const Vec& u);

}  // namespace cnc
