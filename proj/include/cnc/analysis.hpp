// Quasiprobability analysis: Wigner functions, LP decompositions over
// phase-point dictionaries with negativity objectives and infeasibility
// certificates, stabilizer-state enumeration, membership in the polytope
// of operators with nonnegative stabilizer overlaps, the isotropic
// projection simplex checks, and the hyperplane separation witness for
// operators with unit-circle Pauli coefficients.

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cnc/cnc_set.hpp"
#include "cnc/lp.hpp"
#include "cnc/oracle.hpp"

namespace cnc {

// W_rho(u) = (1/d^n) Tr(rho A_u); sums to Tr(rho).
std::map<Vec, double> wigner_function(const DenseOperator& rho, int n, int d,
                                      int cap = kDefaultDenseCap);

// Analytic Wigner coefficients of a phase-point operator.
std::map<Vec, double> wigner_of_point(const PhasePoint& p);

// Dense Wigner operator A_u (cached per (n, d) internally by callers).
DenseOperator wigner_operator(const Vec& u, int cap = kDefaultDenseCap);

// ---------------------------------------------------------------------------

enum class DecomposeMode { Feasibility, MinNegativity };

struct Decomposition {
  bool feasible = false;
  double objective = 0;                 // sum of negative parts (min-negativity)
  std::vector<double> coefficients;     // per dictionary entry
  double residual = 0;                  // max-entry reconstruction error
  std::vector<double> farkas;           // infeasibility certificate (double mode)
  bool certificate_verified = false;
};

Decomposition cnc_decompose(const DenseOperator& rho, int n, int d,
                            const std::vector<PhasePoint>& dictionary,
                            DecomposeMode mode, int cap = kDefaultDenseCap);

// Exact-rational mode; the target must itself be a phase point so every
// datum is exactly representable in cyclotomic coordinates.
struct ExactDecomposition {
  bool feasible = false;
  std::vector<Rational> coefficients;
  std::vector<Rational> farkas;
  bool certificate_verified = false;
};

ExactDecomposition cnc_decompose_exact(const PhasePoint& target,
                                       const std::vector<PhasePoint>& dictionary,
                                       DecomposeMode mode = DecomposeMode::Feasibility);

// Convenience dictionaries.
std::vector<PhasePoint> wigner_dictionary(int n, int d);
std::vector<PhasePoint> full_dictionary(int n, int d, Caps caps = {});
// Closure of seeds under the labels-level action of the given elements.
std::vector<PhasePoint> clifford_orbit_closure(std::vector<PhasePoint> seeds,
                                               const std::vector<CliffordElement>& gens,
                                               uint64_t max_points = 100000);

// ---------------------------------------------------------------------------

// Pure stabilizer states: one rank-1 projector per (maximal isotropic
// subspace, linear outcome assignment) pair.
std::vector<DenseOperator> stabilizer_states(int n, int d,
                                             int cap = kDefaultDenseCap);

struct LambdaReport {
  bool member = false;
  double min_overlap = 0;
  int violating_index = -1;  // index into stabilizer_states(n, d)
};

// Tr(sigma X) >= -1e-9 against every pure stabilizer state.
LambdaReport lambda_membership(const DenseOperator& x, int n, int d,
                               int cap = kDefaultDenseCap);

// ---------------------------------------------------------------------------

// Hermitian trace-1 operators with unit-circle Pauli coefficients:
// (1/d^n) sum_{u in Omega} e^{i eta(u)} T_u with eta(0) = 0 and
// eta(-u) = -eta(u) (mod 2 pi).
struct GeneralizedPhaseOp {
  int n = 1;
  int d = 3;
  std::map<Vec, double> eta;  // support -> phase in [0, 2 pi)

  void validate(double tol = 1e-9) const;
  bool supported(const Vec& u) const { return eta.count(u) > 0; }
  DenseOperator dense(int cap = kDefaultDenseCap) const;

  static GeneralizedPhaseOp from_phase_point(const PhasePoint& p);
};

struct IsoProjectionReport {
  bool ok = true;
  double worst_projector_error = 0;   // pr_I fixes the projectors
  double worst_coordinate = 0;        // most negative barycentric coordinate
  double worst_sum_error = 0;         // |sum of coordinates - 1|
  double worst_reconstruction = 0;    // pr_I(X) vs sum c_gamma A_I^gamma
};

// pr_M truncates the Pauli expansion to labels in M.
DenseOperator pauli_truncation(const DenseOperator& x, const Subspace& m,
                               int cap = kDefaultDenseCap);

IsoProjectionReport iso_projection_check(const Subspace& iso,
                                         const std::vector<DenseOperator>& samples,
                                         int cap = kDefaultDenseCap);

struct SeparationReport {
  double lhs = 0;      // Tr(pr_I(A) Y)
  double rhs_max = 0;  // max over linear gamma of Tr(Pi_I^gamma Y)
  bool separated = false;
};

// Requires a, b in the support, [a,b] = 0, a+b outside the support, and
// b != -a; I = <a,b>.
SeparationReport separation_witness(const GeneralizedPhaseOp& a_op, const Vec& a,
                                    const Vec& b, int cap = kDefaultDenseCap);

// True iff eta restricted to the isotropic subspace I (contained in the
// support) equals (2 pi / d) times a linear Z_d functional.
bool eta_linearity_check(const GeneralizedPhaseOp& a_op, const Subspace& iso,
                         double tol = 1e-9);

}  // namespace cnc
