#include "cnc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

namespace cnc {

namespace {

double two_pi() { return 2.0 * M_PI; }

double wrap_angle(double a) {
  double w = std::fmod(a, two_pi());
  if (w < 0) w += two_pi();
  return w;
}

const std::vector<DenseOperator>& cached_wigner_ops(int n, int d, int cap) {
  static std::map<std::pair<int, int>, std::vector<DenseOperator>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<DenseOperator> ops;
  for (const auto& u : all_vectors(n, d))
    ops.push_back(phase_point_operator(PhasePoint::wigner(u), cap));
  return cache.emplace(key, std::move(ops)).first->second;
}

}  // namespace

std::map<Vec, double> wigner_function(const DenseOperator& rho, int n, int d,
                                      int cap) {
  double dn = static_cast<double>(dense_dim(n, d, cap));
  auto vectors = all_vectors(n, d);
  const auto& ops = cached_wigner_ops(n, d, cap);
  std::map<Vec, double> out;
  for (size_t i = 0; i < vectors.size(); ++i)
    out[vectors[i]] = (rho * ops[i]).trace().real() / dn;
  return out;
}

std::map<Vec, double> wigner_of_point(const PhasePoint& p) {
  int n = p.n(), d = p.d();
  double d2n = 1;
  for (int i = 0; i < 2 * n; ++i) d2n *= d;
  auto elems = p.set.elements();
  std::vector<fe> gammas;
  for (const auto& b : elems) gammas.push_back(p.gamma_of(b));
  std::map<Vec, double> out;
  for (const auto& u : all_vectors(n, d)) {
    std::complex<double> acc = 0;
    for (size_t i = 0; i < elems.size(); ++i)
      acc += omega_power(d, -int64_t(gammas[i]) - symplectic_product(u, elems[i]));
    out[u] = acc.real() / d2n;
  }
  return out;
}

DenseOperator wigner_operator(const Vec& u, int cap) {
  return phase_point_operator(PhasePoint::wigner(u), cap);
}

// ---------------------------------------------------------------------------

Decomposition cnc_decompose(const DenseOperator& rho, int n, int d,
                            const std::vector<PhasePoint>& dictionary,
                            DecomposeMode mode, int cap) {
  if (dictionary.empty()) throw std::invalid_argument("empty dictionary");
  auto vectors = all_vectors(n, d);
  size_t m = vectors.size();
  auto target = wigner_function(rho, n, d, cap);

  std::vector<std::vector<double>> cols;
  for (const auto& p : dictionary) {
    auto w = wigner_of_point(p);
    std::vector<double> col;
    col.reserve(m + 1);
    for (const auto& u : vectors) col.push_back(w[u]);
    col.push_back(1.0);  // sum row
    cols.push_back(std::move(col));
  }
  std::vector<double> b;
  for (const auto& u : vectors) b.push_back(target[u]);
  b.push_back(1.0);

  size_t ncols = mode == DecomposeMode::Feasibility ? cols.size() : 2 * cols.size();
  std::vector<std::vector<double>> a(m + 1, std::vector<double>(ncols, 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i <= m; ++i) {
      a[i][j] = cols[j][i];
      if (mode == DecomposeMode::MinNegativity)
        a[i][cols.size() + j] = -cols[j][i];
    }
  std::vector<double> cost(ncols, 0.0);
  if (mode == DecomposeMode::MinNegativity)
    for (size_t j = cols.size(); j < ncols; ++j) cost[j] = 1.0;

  auto lp = solve_lp<double>(a, b, cost);
  Decomposition out;
  if (lp.status == LpStatus::Infeasible) {
    out.feasible = false;
    out.farkas = lp.farkas;
    // verify y^T col <= tol for all columns and y^T b > tol
    double worst = 0, value = 0;
    for (size_t j = 0; j < cols.size(); ++j) {
      double acc = 0;
      for (size_t i = 0; i <= m; ++i) acc += lp.farkas[i] * cols[j][i];
      worst = std::max(worst, acc);
    }
    for (size_t i = 0; i <= m; ++i) value += lp.farkas[i] * b[i];
    out.certificate_verified = worst <= 1e-6 && value > 1e-7;
    return out;
  }
  if (lp.status != LpStatus::Optimal)
    throw std::runtime_error("LP did not converge");
  out.feasible = true;
  out.objective = lp.objective;
  out.coefficients.resize(dictionary.size());
  for (size_t j = 0; j < dictionary.size(); ++j) {
    out.coefficients[j] = lp.x[j];
    if (mode == DecomposeMode::MinNegativity)
      out.coefficients[j] -= lp.x[cols.size() + j];
  }
  DenseOperator recon = DenseOperator::Zero(rho.rows(), rho.cols());
  for (size_t j = 0; j < dictionary.size(); ++j)
    if (std::abs(out.coefficients[j]) > 1e-12)
      recon += out.coefficients[j] * phase_point_operator(dictionary[j], cap);
  out.residual = (recon - rho).cwiseAbs().maxCoeff();
  return out;
}

// ---------------------------------------------------------------------------
// Exact mode: every Pauli coefficient of a phase-point operator is
// w^k / d^n; expand w^k in the basis 1, w, ..., w^{d-2} over Q using
// 1 + w + ... + w^{d-1} = 0, giving (d-1) rational coordinates per label.

namespace {

std::vector<Rational> exact_coordinates(const PhasePoint& p,
                                        const std::map<Vec, size_t>& index,
                                        int d) {
  Rational scale(1);
  for (int i = 0; i < p.n(); ++i) scale /= d;
  std::vector<Rational> col(index.size() * (d - 1), Rational(0));
  for (const auto& b : p.set.elements()) {
    size_t base = index.at(b) * (d - 1);
    int k = normalize_mod(-p.gamma_of(b), d);
    if (k < d - 1) {
      col[base + k] += scale;
    } else {
      for (int j = 0; j < d - 1; ++j) col[base + j] -= scale;
    }
  }
  return col;
}

}  // namespace

ExactDecomposition cnc_decompose_exact(const PhasePoint& target,
                                       const std::vector<PhasePoint>& dictionary,
                                       DecomposeMode mode) {
  if (dictionary.empty()) throw std::invalid_argument("empty dictionary");
  int n = target.n(), d = target.d();
  std::map<Vec, size_t> index;
  {
    size_t i = 0;
    for (const auto& u : all_vectors(n, d)) index[u] = i++;
  }
  std::vector<std::vector<Rational>> cols;
  for (const auto& p : dictionary) cols.push_back(exact_coordinates(p, index, d));
  std::vector<Rational> b = exact_coordinates(target, index, d);
  size_t m = b.size();

  size_t ncols = mode == DecomposeMode::Feasibility ? cols.size() : 2 * cols.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(ncols, Rational(0)));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < m; ++i) {
      a[i][j] = cols[j][i];
      if (mode == DecomposeMode::MinNegativity) a[i][cols.size() + j] = -cols[j][i];
    }
  std::vector<Rational> cost(ncols, Rational(0));
  if (mode == DecomposeMode::MinNegativity)
    for (size_t j = cols.size(); j < ncols; ++j) cost[j] = 1;

  auto lp = solve_lp<Rational>(a, b, cost);
  ExactDecomposition out;
  if (lp.status == LpStatus::Infeasible) {
    out.feasible = false;
    out.farkas = lp.farkas;
    bool ok = true;
    for (size_t j = 0; j < cols.size() && ok; ++j) {
      Rational acc(0);
      for (size_t i = 0; i < m; ++i) acc += lp.farkas[i] * cols[j][i];
      if (acc > 0) ok = false;
    }
    Rational value(0);
    for (size_t i = 0; i < m; ++i) value += lp.farkas[i] * b[i];
    out.certificate_verified = ok && value > 0;
    return out;
  }
  if (lp.status != LpStatus::Optimal)
    throw std::runtime_error("exact LP did not converge");
  out.feasible = true;
  out.coefficients.resize(dictionary.size());
  for (size_t j = 0; j < dictionary.size(); ++j) {
    out.coefficients[j] = lp.x[j];
    if (mode == DecomposeMode::MinNegativity)
      out.coefficients[j] -= lp.x[cols.size() + j];
  }
  return out;
}

std::vector<PhasePoint> wigner_dictionary(int n, int d) {
  std::vector<PhasePoint> out;
  for (const auto& u : all_vectors(n, d)) out.push_back(PhasePoint::wigner(u));
  return out;
}

std::vector<PhasePoint> full_dictionary(int n, int d, Caps caps) {
  std::vector<PhasePoint> out;
  PhasePointEnumerator en(n, d, caps);
  while (auto p = en.next()) out.push_back(std::move(*p));
  return out;
}

std::vector<PhasePoint> clifford_orbit_closure(std::vector<PhasePoint> seeds,
                                               const std::vector<CliffordElement>& gens,
                                               uint64_t max_points) {
  std::set<PhasePoint> seen(seeds.begin(), seeds.end());
  std::vector<PhasePoint> frontier(seen.begin(), seen.end());
  while (!frontier.empty() && seen.size() < max_points) {
    std::vector<PhasePoint> next;
    for (const auto& p : frontier) {
      for (const auto& g : gens) {
        PhasePoint q = act_on_phase_point(g, p);
        if (seen.insert(q).second) {
          next.push_back(std::move(q));
          if (seen.size() >= max_points) break;
        }
      }
      if (seen.size() >= max_points) break;
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------

std::vector<DenseOperator> stabilizer_states(int n, int d, int cap) {
  static std::map<std::pair<int, int>, std::vector<DenseOperator>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<DenseOperator> out;
  for (const auto& iso : all_isotropic_subspaces(n, d)) {
    if (iso.dim() != n) continue;  // maximal isotropic only
    std::vector<fe> values(n, 0);
    while (true) {
      out.push_back(projector(OutcomeAssignment(iso, values), cap));
      int k = 0;
      while (k < n && ++values[k] == d) values[k++] = 0;
      if (k == n) break;
    }
  }
  cache.emplace(key, out);
  return out;
}

LambdaReport lambda_membership(const DenseOperator& x, int n, int d, int cap) {
  if (std::abs(x.trace().real() - 1.0) > 1e-6 || std::abs(x.trace().imag()) > 1e-6)
    throw std::invalid_argument("membership check needs a trace-1 operator");
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-6)
    throw std::invalid_argument("membership check needs a Hermitian operator");
  auto states = stabilizer_states(n, d, cap);
  LambdaReport rep;
  rep.min_overlap = 1e300;
  for (size_t i = 0; i < states.size(); ++i) {
    double ov = (states[i] * x).trace().real();
    if (ov < rep.min_overlap) {
      rep.min_overlap = ov;
      rep.violating_index = static_cast<int>(i);
    }
  }
  rep.member = rep.min_overlap >= -1e-9;
  if (rep.member) rep.violating_index = -1;
  return rep;
}

// ---------------------------------------------------------------------------

void GeneralizedPhaseOp::validate(double tol) const {
  Vec zero(n, d);
  auto it = eta.find(zero);
  if (it == eta.end() || std::abs(it->second) > tol)
    throw std::invalid_argument("support must contain 0 with phase 0");
  for (const auto& [u, theta] : eta) {
    if (u.n != n || u.d != d)
      throw std::invalid_argument("dimension/modulus mismatch in support");
    Vec neg = u.scaled(d - 1);
    auto jt = eta.find(neg);
    if (jt == eta.end())
      throw std::invalid_argument("support must be symmetric under negation");
    double diff = wrap_angle(theta + jt->second);
    if (std::min(diff, two_pi() - diff) > tol)
      throw std::invalid_argument("phases must satisfy eta(-u) = -eta(u)");
  }
}

DenseOperator GeneralizedPhaseOp::dense(int cap) const {
  int64_t dim = dense_dim(n, d, cap);
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  for (const auto& [u, theta] : eta)
    acc += std::complex<double>(std::cos(theta), std::sin(theta)) *
           pauli_matrix(u, cap);
  double dn = static_cast<double>(dim);
  return acc / dn;
}

GeneralizedPhaseOp GeneralizedPhaseOp::from_phase_point(const PhasePoint& p) {
  GeneralizedPhaseOp op;
  op.n = p.n();
  op.d = p.d();
  for (const auto& b : p.set.elements())
    op.eta[b] = wrap_angle(-two_pi() * p.gamma_of(b) / p.d());
  return op;
}

DenseOperator pauli_truncation(const DenseOperator& x, const Subspace& m, int cap) {
  int n = m.n(), d = m.d();
  int64_t dim = dense_dim(n, d, cap);
  DenseOperator acc = DenseOperator::Zero(dim, dim);
  for (const auto& b : m.elements()) {
    std::complex<double> coeff =
        (pauli_matrix(b.scaled(d - 1), cap) * x).trace() / double(dim);
    acc += coeff * pauli_matrix(b, cap);
  }
  return acc;
}

IsoProjectionReport iso_projection_check(const Subspace& iso,
                                         const std::vector<DenseOperator>& samples,
                                         int cap) {
  if (!is_isotropic(iso))
    throw std::invalid_argument("projection check needs an isotropic subspace");
  int n = iso.n(), d = iso.d();
  double dn = static_cast<double>(dense_dim(n, d, cap));
  double iso_size = static_cast<double>(iso.element_count());

  // all linear assignments on the subspace
  std::vector<OutcomeAssignment> assignments;
  std::vector<fe> values(iso.dim(), 0);
  while (true) {
    assignments.emplace_back(iso, values);
    int k = 0;
    while (k < iso.dim() && ++values[k] == d) values[k++] = 0;
    if (k == iso.dim()) break;
  }
  std::vector<DenseOperator> projs;
  for (const auto& r : assignments) projs.push_back(projector(r, cap));

  IsoProjectionReport rep;
  for (const auto& pi : projs) {
    double err = (pauli_truncation(pi, iso, cap) - pi).cwiseAbs().maxCoeff();
    rep.worst_projector_error = std::max(rep.worst_projector_error, err);
  }
  rep.worst_coordinate = 0;
  for (const auto& x : samples) {
    DenseOperator prx = pauli_truncation(x, iso, cap);
    DenseOperator recon = DenseOperator::Zero(prx.rows(), prx.cols());
    double sum = 0;
    for (const auto& pi : projs) {
      double c = (x * pi).trace().real();
      rep.worst_coordinate = std::min(rep.worst_coordinate, c);
      sum += c;
      recon += c * (iso_size / dn) * pi;  // vertex is the trace-1 rescaling
    }
    rep.worst_sum_error = std::max(rep.worst_sum_error, std::abs(sum - 1.0));
    rep.worst_reconstruction = std::max(
        rep.worst_reconstruction, (recon - prx).cwiseAbs().maxCoeff());
  }
  rep.ok = rep.worst_projector_error <= 1e-9 && rep.worst_coordinate >= -1e-7 &&
           rep.worst_sum_error <= 1e-7 && rep.worst_reconstruction <= 1e-7;
  return rep;
}

SeparationReport separation_witness(const GeneralizedPhaseOp& a_op, const Vec& a,
                                    const Vec& b, int cap) {
  a_op.validate();
  int d = a_op.d;
  if (!a_op.supported(a) || !a_op.supported(b))
    throw std::invalid_argument("witness labels must lie in the support");
  if (symplectic_product(a, b) != 0)
    throw std::invalid_argument("witness labels must commute");
  if (b == a.scaled(d - 1)) throw std::invalid_argument("b must differ from -a");
  if (a_op.supported(a + b))
    throw std::invalid_argument("a+b must lie outside the support");

  Subspace iso = span({a, b});
  double off = two_pi() * ((d - 1) / 2) / d;  // floor(d/2) in omega units
  double ea = a_op.eta.at(a), eb = a_op.eta.at(b);
  auto term = [&](const Vec& v, double theta) -> DenseOperator {
    return std::complex<double>(std::cos(theta), std::sin(theta)) *
           pauli_matrix(v, cap);
  };
  DenseOperator y = term(a, ea) + term(b, eb) + term(a.scaled(d - 1), -ea) +
                    term(b.scaled(d - 1), -eb) + term(a + b, ea + eb + off) +
                    term((a + b).scaled(d - 1), -(ea + eb + off));

  SeparationReport rep;
  rep.lhs = (pauli_truncation(a_op.dense(cap), iso, cap) * y).trace().real();
  rep.rhs_max = -1e300;
  std::vector<fe> values(iso.dim(), 0);
  while (true) {
    DenseOperator pi = projector(OutcomeAssignment(iso, values), cap);
    rep.rhs_max = std::max(rep.rhs_max, (pi * y).trace().real());
    int k = 0;
    while (k < iso.dim() && ++values[k] == a_op.d) values[k++] = 0;
    if (k == iso.dim()) break;
  }
  rep.separated = rep.lhs > rep.rhs_max;
  return rep;
}

bool eta_linearity_check(const GeneralizedPhaseOp& a_op, const Subspace& iso,
                         double tol) {
  int d = a_op.d;
  auto elems = iso.elements();
  for (const auto& v : elems)
    if (!a_op.supported(v))
      throw std::invalid_argument("isotropic subspace not contained in support");
  std::vector<fe> values(iso.dim(), 0);
  while (true) {
    OutcomeAssignment gamma(iso, values);
    bool match = true;
    for (const auto& v : elems) {
      double want = wrap_angle(two_pi() * gamma.eval(v) / d);
      double have = wrap_angle(a_op.eta.at(v));
      double diff = wrap_angle(want - have);
      if (std::min(diff, two_pi() - diff) > tol) {
        match = false;
        break;
      }
    }
    if (match) return true;
    int k = 0;
    while (k < iso.dim() && ++values[k] == d) values[k++] = 0;
    if (k == iso.dim()) break;
  }
  return false;
}

}  // namespace cnc
