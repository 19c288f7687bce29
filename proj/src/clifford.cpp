#include "cnc/clifford.hpp"

#include <algorithm>

namespace cnc {

ModMatrix ModMatrix::identity(int size, int d) {
  ModMatrix out;
  out.d = d;
  out.size = size;
  out.m.assign(size, std::vector<fe>(size, 0));
  for (int i = 0; i < size; ++i) out.m[i][i] = 1;
  return out;
}

Vec ModMatrix::apply(const Vec& v) const {
  if (static_cast<int>(v.c.size()) != size || v.d != d)
    throw std::invalid_argument("dimension/modulus mismatch");
  Vec out(v.n, v.d);
  for (int i = 0; i < size; ++i) {
    int64_t acc = 0;
    for (int j = 0; j < size; ++j) acc += int64_t(m[i][j]) * v.c[j];
    out.c[i] = normalize_mod(acc, d);
  }
  return out;
}

ModMatrix ModMatrix::mul(const ModMatrix& o) const {
  if (o.size != size || o.d != d)
    throw std::invalid_argument("dimension/modulus mismatch");
  ModMatrix out;
  out.d = d;
  out.size = size;
  out.m.assign(size, std::vector<fe>(size, 0));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      int64_t acc = 0;
      for (int k = 0; k < size; ++k) acc += int64_t(m[i][k]) * o.m[k][j];
      out.m[i][j] = normalize_mod(acc, d);
    }
  return out;
}

ModMatrix ModMatrix::inverse() const {
  // Gauss-Jordan with augmented identity.
  std::vector<std::vector<fe>> a(size, std::vector<fe>(2 * size, 0));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) a[i][j] = m[i][j];
    a[i][size + i] = 1;
  }
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int i = col; i < size; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular matrix mod d");
    std::swap(a[col], a[piv]);
    fe inv = inv_mod(a[col][col], d);
    for (auto& v : a[col]) v = normalize_mod(int64_t(v) * inv, d);
    for (int i = 0; i < size; ++i) {
      if (i == col || a[i][col] == 0) continue;
      fe f = a[i][col];
      for (int j = 0; j < 2 * size; ++j)
        a[i][j] = normalize_mod(a[i][j] - int64_t(f) * a[col][j], d);
    }
  }
  ModMatrix out;
  out.d = d;
  out.size = size;
  out.m.assign(size, std::vector<fe>(size, 0));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) out.m[i][j] = a[i][size + j];
  return out;
}

bool is_symplectic(const ModMatrix& s, int n) {
  int d = s.d;
  std::vector<Vec> units;
  for (int k = 0; k < n; ++k) {
    units.push_back(Vec::unit_z(n, d, k));
    units.push_back(Vec::unit_x(n, d, k));
  }
  for (size_t i = 0; i < units.size(); ++i)
    for (size_t j = i + 1; j < units.size(); ++j) {
      fe lhs = symplectic_product(s.apply(units[i]), s.apply(units[j]));
      fe rhs = symplectic_product(units[i], units[j]);
      if (lhs != rhs) return false;
    }
  return true;
}

CliffordElement CliffordElement::identity(int n, int d) {
  return CliffordElement{n, d, ModMatrix::identity(2 * n, d), Vec(n, d)};
}

CliffordElement CliffordElement::from_parts(ModMatrix s, Vec b) {
  int n = b.n;
  if (s.size != 2 * n || s.d != b.d)
    throw std::invalid_argument("dimension/modulus mismatch");
  if (!is_symplectic(s, n))
    throw std::invalid_argument("matrix is not symplectic mod d");
  return CliffordElement{n, b.d, std::move(s), std::move(b)};
}

fe CliffordElement::phase_of(const Vec& a) const {
  return symplectic_product(b, s.apply(a));
}

GateName gate_name_from_string(const std::string& name) {
  if (name == "F") return GateName::F;
  if (name == "P") return GateName::P;
  if (name == "SUM") return GateName::SUM;
  if (name == "X") return GateName::X;
  if (name == "Z") return GateName::Z;
  throw std::invalid_argument("unknown gate name: " + name);
}

std::string to_string(GateName g) {
  switch (g) {
    case GateName::F: return "F";
    case GateName::P: return "P";
    case GateName::SUM: return "SUM";
    case GateName::X: return "X";
    case GateName::Z: return "Z";
  }
  return "?";
}

CliffordElement gate(GateName name, const std::vector<int>& qudits, int n,
                     int d, int param) {
  require_odd_prime(d);
  auto check_index = [&](int q) {
    if (q < 0 || q >= n)
      throw std::invalid_argument("qudit index out of range: " + std::to_string(q));
  };
  CliffordElement g = CliffordElement::identity(n, d);
  switch (name) {
    case GateName::F: {
      // Z -> X -> Z^{-1}: (z, x) -> (-x, z) on the acted qudit.
      if (qudits.size() != 1) throw std::invalid_argument("F takes one qudit");
      int q = qudits[0];
      check_index(q);
      g.s.m[q][q] = 0;
      g.s.m[q][n + q] = normalize_mod(-1, d);
      g.s.m[n + q][n + q] = 0;
      g.s.m[n + q][q] = 1;
      break;
    }
    case GateName::P: {
      // X -> w^{..} ZX: (z, x) -> (z + x, x).
      if (qudits.size() != 1) throw std::invalid_argument("P takes one qudit");
      int q = qudits[0];
      check_index(q);
      g.s.m[q][n + q] = 1;
      break;
    }
    case GateName::SUM: {
      if (qudits.size() != 2 || qudits[0] == qudits[1])
        throw std::invalid_argument("SUM takes distinct control and target");
      int c = qudits[0], t = qudits[1];
      check_index(c);
      check_index(t);
      // X_c -> X_c X_t, Z_t -> Z_c^{-1} Z_t.
      g.s.m[n + t][n + c] = 1;
      g.s.m[c][t] = normalize_mod(-1, d);
      break;
    }
    case GateName::X: {
      if (qudits.size() != 1) throw std::invalid_argument("X takes one qudit");
      int q = qudits[0];
      check_index(q);
      g.b = Vec::unit_x(n, d, q).scaled(normalize_mod(param, d));
      break;
    }
    case GateName::Z: {
      if (qudits.size() != 1) throw std::invalid_argument("Z takes one qudit");
      int q = qudits[0];
      check_index(q);
      g.b = Vec::unit_z(n, d, q).scaled(normalize_mod(param, d));
      break;
    }
  }
  return g;
}

CliffordElement compose(const CliffordElement& g, const CliffordElement& h) {
  if (g.n != h.n || g.d != h.d)
    throw std::invalid_argument("dimension/modulus mismatch");
  return CliffordElement{g.n, g.d, g.s.mul(h.s), g.b + g.s.apply(h.b)};
}

CliffordElement inverse(const CliffordElement& g) {
  ModMatrix si = g.s.inverse();
  return CliffordElement{g.n, g.d, si, si.apply(g.b).scaled(g.d - 1)};
}

// ---------------------------------------------------------------------------
// Dense realizations

DenseOperator gate_unitary(GateName name, const std::vector<int>& qudits, int n,
                           int d, int param, int cap) {
  int64_t dim = dense_dim(n, d, cap);
  auto digits = [&](int64_t idx) {
    std::vector<int> out(n, 0);
    for (int k = n - 1; k >= 0; --k) {
      out[k] = static_cast<int>(idx % d);
      idx /= d;
    }
    return out;
  };
  auto index = [&](const std::vector<int>& dg) {
    int64_t idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * d + dg[k];
    return idx;
  };
  DenseOperator u = DenseOperator::Zero(dim, dim);
  switch (name) {
    case GateName::F: {
      int q = qudits.at(0);
      double norm = 1.0 / std::sqrt(static_cast<double>(d));
      for (int64_t col = 0; col < dim; ++col) {
        auto dg = digits(col);
        int j = dg[q];
        for (int k = 0; k < d; ++k) {
          dg[q] = k;
          u(index(dg), col) += omega_power(d, -int64_t(j) * k) * norm;
        }
      }
      break;
    }
    case GateName::P: {
      int q = qudits.at(0);
      fe h = half_mod(d);
      for (int64_t col = 0; col < dim; ++col) {
        int j = digits(col)[q];
        u(col, col) = omega_power(d, int64_t(j) * j * h);
      }
      break;
    }
    case GateName::SUM: {
      int c = qudits.at(0), t = qudits.at(1);
      for (int64_t col = 0; col < dim; ++col) {
        auto dg = digits(col);
        dg[t] = (dg[t] + dg[c]) % d;
        u(index(dg), col) = 1.0;
      }
      break;
    }
    case GateName::X:
      return pauli_matrix(Vec::unit_x(n, d, qudits.at(0)).scaled(normalize_mod(param, d)), cap);
    case GateName::Z:
      return pauli_matrix(Vec::unit_z(n, d, qudits.at(0)).scaled(normalize_mod(param, d)), cap);
  }
  return u;
}

DenseOperator dense_unitary(const CliffordElement& g, int cap) {
  int n = g.n, d = g.d;
  int64_t dim = dense_dim(n, d, cap);
  // |0..0> is the phase-space point (L = <e_1..e_n>, gamma = 0); its image
  // under g is again a rank-1 stabilizer projector, whose range fixes the
  // first column of the unitary up to a global phase.  The remaining
  // columns follow from U|v> = U T_{(0|v)} U^dag U|0> = w^{Phi} T_{S(0|v)} U|0>.
  std::vector<Vec> zs;
  for (int k = 0; k < n; ++k) zs.push_back(Vec::unit_z(n, d, k));
  CncSet l0 = CncSet::subspace(span(zs));
  PhasePoint p0{l0, ValueAssignment(l0, std::vector<fe>(n, 0))};
  DenseOperator proj = phase_point_operator(act_on_phase_point(g, p0), cap);
  // any nonzero column of the rank-1 projector spans its range
  Eigen::Index best = 0;
  proj.colwise().norm().maxCoeff(&best);
  Eigen::VectorXcd psi = proj.col(best);
  psi.normalize();

  DenseOperator u = DenseOperator::Zero(dim, dim);
  for (int64_t v = 0; v < dim; ++v) {
    Vec bv(n, d);
    int64_t rest = v;
    for (int k = n - 1; k >= 0; --k) {
      bv.c[n + k] = static_cast<fe>(rest % d);
      rest /= d;
    }
    Vec sb = g.s.apply(bv);
    std::complex<double> ph = omega_power(d, symplectic_product(g.b, sb));
    u.col(v) = ph * (pauli_matrix(sb, cap) * psi);
  }
  // canonical global phase: largest entry real positive
  Eigen::Index r = 0, c = 0;
  u.cwiseAbs().maxCoeff(&r, &c);
  std::complex<double> ph = u(r, c) / std::abs(u(r, c));
  return u / ph;
}

// ---------------------------------------------------------------------------

PhasePoint act_on_phase_point(const CliffordElement& g, const PhasePoint& p) {
  ModMatrix sinv = g.s.inverse();
  auto gamma_new = [&](const Vec& v) -> fe {
    fe old = p.gamma.eval(p.set, sinv.apply(v));
    return normalize_mod(old - symplectic_product(g.b, v), g.d);
  };
  CncSet mapped = [&] {
    if (p.set.kind() == CncKind::LinearSubspace) {
      std::vector<Vec> rows;
      for (const auto& r : p.set.space().basis()) rows.push_back(g.s.apply(r));
      if (rows.empty()) return CncSet::subspace(Subspace(g.n, g.d));
      return CncSet::subspace(span(rows));
    }
    std::vector<Vec> core_rows;
    for (const auto& r : p.set.core().basis()) core_rows.push_back(g.s.apply(r));
    Subspace core = core_rows.empty() ? Subspace(g.n, g.d) : span(core_rows);
    std::vector<Vec> gens;
    for (const auto& a : p.set.generators()) gens.push_back(g.s.apply(a));
    return CncSet::cone(core, gens);
  }();
  return PhasePoint{mapped, assignment_from_function(mapped, gamma_new)};
}

Vec act_on_wigner_label(const CliffordElement& g, const Vec& u) {
  return g.s.apply(u) + g.b;
}

}  // namespace cnc
