#include "cnc/io.hpp"

#include <fstream>
#include <sstream>

namespace cnc::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

// ---------------------------------------------------------------------------
// small schema helpers

static const json& field(const json& j, const std::string& key,
                         const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

static int int_field(const json& j, const std::string& key,
                     const std::string& path) {
  const json& f = field(j, key, path);
  if (!f.is_number_integer())
    throw SchemaError(path + "/" + key, "expected an integer");
  return f.get<int>();
}

static void expect_header(const json& j, const std::string& kind,
                          const std::string& path) {
  const json& fmt = field(j, "format", path);
  if (!fmt.is_string() || fmt.get<std::string>() != "cnc/1")
    throw SchemaError(path + "/format", "expected \"cnc/1\"");
  const json& k = field(j, "kind", path);
  if (!k.is_string() || k.get<std::string>() != kind)
    throw SchemaError(path + "/kind", "expected \"" + kind + "\"");
}

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (fe c : v.c) out.push_back(c);
  return out;
}

Vec vec_from_json(const json& j, int n, int d, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != 2 * n)
    throw SchemaError(path, "expected an array of 2n integers");
  std::vector<fe> coords;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw SchemaError(path, "expected integers");
    coords.push_back(normalize_mod(e.get<int64_t>(), d));
  }
  return Vec(n, d, coords);
}

static std::vector<Vec> vec_list_from_json(const json& j, int n, int d,
                                           const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  std::vector<Vec> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(vec_from_json(j[i], n, d, path + "/" + std::to_string(i)));
  return out;
}

// ---------------------------------------------------------------------------
// phase points

json point_to_json(const PhasePoint& p) {
  json out;
  out["form"] = p.set.form() == CncForm::ConeForm ? "cone" : "subspace";
  json core = json::array();
  json gens = json::array();
  if (p.set.kind() == CncKind::LinearSubspace) {
    for (const auto& r : p.set.space().basis()) core.push_back(vec_to_json(r));
  } else {
    for (const auto& r : p.set.core().basis()) core.push_back(vec_to_json(r));
    for (const auto& g : p.set.generators()) gens.push_back(vec_to_json(g));
  }
  out["I"] = core;
  out["generators"] = gens;
  json gamma = json::array();
  for (fe v : p.gamma.values()) gamma.push_back(v);
  out["gamma"] = gamma;
  return out;
}

namespace {

// Loose description evaluator: gamma given on core basis rows followed by
// coset generators, extended linearly on the core and on each coset line.
struct PointDescription {
  Subspace core{1, 3};
  std::vector<Vec> gens;
  std::vector<fe> values;
  bool subspace_form = false;

  fe eval(const Vec& v, const std::string& path) const {
    int d = core.d();
    auto core_eval = [&](const Vec& w) -> fe {
      auto coords = core.coordinates(w);
      if (!coords) throw SchemaError(path, "gamma undefined on an element");
      int64_t acc = 0;
      for (size_t i = 0; i < coords->size(); ++i)
        acc += int64_t((*coords)[i]) * values[i];
      return normalize_mod(acc, d);
    };
    Vec red = core.reduce(v);
    if (red.is_zero()) return core_eval(v);
    for (size_t k = 0; k < gens.size(); ++k) {
      Vec gred = core.reduce(gens[k]);
      for (fe s = 1; s < d; ++s) {
        if (gred.scaled(s) == red)
          return normalize_mod(
              int64_t(s) * values[core.basis().size() + k] +
                  core_eval(v - gens[k].scaled(s)),
              d);
      }
    }
    throw SchemaError(path, "gamma undefined on an element");
  }
};

}  // namespace

PhasePoint point_from_json(const json& j, int n, int d, const std::string& path) {
  const json& form = field(j, "form", path);
  if (!form.is_string()) throw SchemaError(path + "/form", "expected a string");
  std::string f = form.get<std::string>();
  if (f != "subspace" && f != "cone")
    throw SchemaError(path + "/form", "expected \"subspace\" or \"cone\"");
  auto core_rows = vec_list_from_json(field(j, "I", path), n, d, path + "/I");
  auto gens = vec_list_from_json(field(j, "generators", path), n, d,
                                 path + "/generators");
  const json& gj = field(j, "gamma", path);
  if (!gj.is_array()) throw SchemaError(path + "/gamma", "expected an array");
  std::vector<fe> values;
  for (const auto& e : gj) {
    if (!e.is_number_integer())
      throw SchemaError(path + "/gamma", "expected integers");
    values.push_back(normalize_mod(e.get<int64_t>(), d));
  }

  PointDescription desc;
  desc.core = core_rows.empty() ? Subspace(n, d) : span(core_rows);
  desc.gens = gens;
  desc.subspace_form = f == "subspace";
  if (desc.core.dim() != static_cast<int>(core_rows.size()))
    throw SchemaError(path + "/I", "rows must be linearly independent");
  if (values.size() != core_rows.size() + gens.size())
    throw SchemaError(path + "/gamma", "one value per core row and generator");
  desc.values = values;

  CncSet set = [&] {
    if (f == "cone") {
      auto check = validate_cone(desc.core, gens);
      if (!check.ok) throw SchemaError(path, check.reason);
      return CncSet::cone(desc.core, gens);
    }
    std::vector<Vec> all = core_rows;
    all.insert(all.end(), gens.begin(), gens.end());
    if (all.empty()) return CncSet::subspace(Subspace(n, d));
    if (!gens.empty()) {
      auto check = validate_cone(desc.core, gens);
      if (!check.ok) throw SchemaError(path, check.reason);
    }
    return CncSet::subspace(span(all));
  }();
  ValueAssignment gamma = assignment_from_function(
      set, [&](const Vec& v) { return desc.eval(v, path + "/gamma"); });
  return PhasePoint{set, gamma};
}

// ---------------------------------------------------------------------------
// circuits

static json gate_to_json(const GateInstruction& g) {
  json out;
  out["op"] = "gate";
  if (g.spec) {
    out["name"] = to_string(g.spec->name);
    out["qudits"] = g.spec->qudits;
    if (g.spec->name == GateName::X || g.spec->name == GateName::Z)
      out["param"] = g.spec->param;
  } else {
    json rows = json::array();
    for (const auto& row : g.element.s.m) rows.push_back(row);
    out["S"] = rows;
    out["b"] = vec_to_json(g.element.b);
  }
  return out;
}

static GateInstruction gate_from_json(const json& j, int n, int d,
                                      const std::string& path) {
  if (j.contains("name")) {
    const json& name = field(j, "name", path);
    if (!name.is_string()) throw SchemaError(path + "/name", "expected a string");
    GateName gn;
    try {
      gn = gate_name_from_string(name.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path + "/name", e.what());
    }
    const json& qj = field(j, "qudits", path);
    if (!qj.is_array()) throw SchemaError(path + "/qudits", "expected an array");
    std::vector<int> qudits;
    for (const auto& q : qj) {
      if (!q.is_number_integer())
        throw SchemaError(path + "/qudits", "expected integers");
      qudits.push_back(q.get<int>());
    }
    int param = 1;
    if (j.contains("param")) param = int_field(j, "param", path);
    try {
      GateSpec spec{gn, qudits, param};
      return GateInstruction{gate(gn, qudits, n, d, param), spec};
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path, e.what());
    }
  }
  // raw (S, b) element
  const json& sj = field(j, "S", path);
  if (!sj.is_array() || static_cast<int>(sj.size()) != 2 * n)
    throw SchemaError(path + "/S", "expected a 2n x 2n integer matrix");
  ModMatrix s;
  s.d = d;
  s.size = 2 * n;
  for (const auto& rowj : sj) {
    if (!rowj.is_array() || static_cast<int>(rowj.size()) != 2 * n)
      throw SchemaError(path + "/S", "expected a 2n x 2n integer matrix");
    std::vector<fe> row;
    for (const auto& e : rowj) {
      if (!e.is_number_integer())
        throw SchemaError(path + "/S", "expected integers");
      row.push_back(normalize_mod(e.get<int64_t>(), d));
    }
    s.m.push_back(std::move(row));
  }
  Vec b = vec_from_json(field(j, "b", path), n, d, path + "/b");
  try {
    return GateInstruction{CliffordElement::from_parts(s, b), std::nullopt};
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path + "/S", e.what());
  }
}

json circuit_to_json(const Circuit& c) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "circuit";
  out["d"] = c.d;
  out["n"] = c.n;
  json instrs = json::array();
  for (const auto& ins : c.instructions) {
    if (const auto* g = std::get_if<GateInstruction>(&ins)) {
      instrs.push_back(gate_to_json(*g));
    } else if (const auto* m = std::get_if<MeasureInstruction>(&ins)) {
      json mj;
      mj["op"] = "measure";
      mj["a"] = vec_to_json(m->label);
      mj["var"] = m->var;
      instrs.push_back(mj);
    } else if (const auto* cg = std::get_if<CondGateInstruction>(&ins)) {
      json cj;
      cj["op"] = "cond-gate";
      json cond;
      json vars;
      for (const auto& [v, coef] : cg->condition.coeffs) vars[v] = coef;
      cond["vars"] = vars;
      cond["const"] = cg->condition.constant;
      cj["if"] = cond;
      cj["gate"] = gate_to_json(cg->gate);
      instrs.push_back(cj);
    }
  }
  out["instructions"] = instrs;
  return out;
}

Circuit circuit_from_json(const json& j) {
  const std::string path = "circuit";
  expect_header(j, "circuit", path);
  Circuit c;
  c.d = int_field(j, "d", path);
  c.n = int_field(j, "n", path);
  if (!is_odd_prime(c.d)) throw SchemaError(path + "/d", "d must be an odd prime");
  if (c.n < 1) throw SchemaError(path + "/n", "n must be >= 1");
  const json& instrs = field(j, "instructions", path);
  if (!instrs.is_array())
    throw SchemaError(path + "/instructions", "expected an array");
  for (size_t i = 0; i < instrs.size(); ++i) {
    std::string ipath = path + "/instructions/" + std::to_string(i);
    const json& ij = instrs[i];
    std::string op = field(ij, "op", ipath).get<std::string>();
    if (op == "gate") {
      c.instructions.push_back(gate_from_json(ij, c.n, c.d, ipath));
    } else if (op == "measure") {
      MeasureInstruction m;
      m.label = vec_from_json(field(ij, "a", ipath), c.n, c.d, ipath + "/a");
      const json& var = field(ij, "var", ipath);
      if (!var.is_string()) throw SchemaError(ipath + "/var", "expected a string");
      m.var = var.get<std::string>();
      c.instructions.push_back(m);
    } else if (op == "cond-gate") {
      CondGateInstruction cg;
      const json& cond = field(ij, "if", ipath);
      const json& vars = field(cond, "vars", ipath + "/if");
      if (!vars.is_object())
        throw SchemaError(ipath + "/if/vars", "expected an object");
      for (auto it = vars.begin(); it != vars.end(); ++it) {
        if (!it.value().is_number_integer())
          throw SchemaError(ipath + "/if/vars", "expected integer coefficients");
        cg.condition.coeffs[it.key()] =
            normalize_mod(it.value().get<int64_t>(), c.d);
      }
      cg.condition.constant = cond.contains("const")
                                  ? normalize_mod(int_field(cond, "const", ipath + "/if"), c.d)
                                  : 0;
      cg.gate = gate_from_json(field(ij, "gate", ipath), c.n, c.d, ipath + "/gate");
      c.instructions.push_back(cg);
    } else {
      throw SchemaError(ipath + "/op", "unknown instruction op \"" + op + "\"");
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// ensembles and distributions

json ensemble_to_json(const Ensemble& e) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "ensemble";
  out["d"] = e.d;
  out["n"] = e.n;
  json points = json::array();
  for (const auto& wp : e.points) {
    json pj = point_to_json(wp.point);
    pj["weight"] = wp.weight;
    points.push_back(pj);
  }
  out["points"] = points;
  return out;
}

Ensemble ensemble_from_json(const json& j) {
  const std::string path = "ensemble";
  expect_header(j, "ensemble", path);
  Ensemble e;
  e.d = int_field(j, "d", path);
  e.n = int_field(j, "n", path);
  if (!is_odd_prime(e.d)) throw SchemaError(path + "/d", "d must be an odd prime");
  const json& points = field(j, "points", path);
  if (!points.is_array()) throw SchemaError(path + "/points", "expected an array");
  for (size_t i = 0; i < points.size(); ++i) {
    std::string ppath = path + "/points/" + std::to_string(i);
    const json& weight = field(points[i], "weight", ppath);
    if (!weight.is_number())
      throw SchemaError(ppath + "/weight", "expected a number");
    e.points.push_back(WeightedPoint{
        point_from_json(points[i], e.n, e.d, ppath), weight.get<double>()});
  }
  try {
    e.validate();
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(path, ex.what());
  }
  return e;
}

json wigner_distribution_to_json(const WignerDistribution& w) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "wigner-distribution";
  out["d"] = w.d;
  out["n"] = w.n;
  json weights = json::array();
  for (const auto& [u, p] : w.weights) {
    json e;
    e["u"] = vec_to_json(u);
    e["weight"] = p;
    weights.push_back(e);
  }
  out["weights"] = weights;
  return out;
}

WignerDistribution wigner_distribution_from_json(const json& j) {
  const std::string path = "wigner-distribution";
  expect_header(j, "wigner-distribution", path);
  WignerDistribution w;
  w.d = int_field(j, "d", path);
  w.n = int_field(j, "n", path);
  if (!is_odd_prime(w.d)) throw SchemaError(path + "/d", "d must be an odd prime");
  const json& weights = field(j, "weights", path);
  if (!weights.is_array()) throw SchemaError(path + "/weights", "expected an array");
  for (size_t i = 0; i < weights.size(); ++i) {
    std::string wpath = path + "/weights/" + std::to_string(i);
    Vec u = vec_from_json(field(weights[i], "u", wpath), w.n, w.d, wpath + "/u");
    const json& p = field(weights[i], "weight", wpath);
    if (!p.is_number()) throw SchemaError(wpath + "/weight", "expected a number");
    w.weights.emplace_back(u, p.get<double>());
  }
  try {
    w.validate();
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(path, ex.what());
  }
  return w;
}

// ---------------------------------------------------------------------------
// states

DensityState state_from_json(const json& j) {
  const std::string path = "state";
  expect_header(j, "state", path);
  int d = int_field(j, "d", path);
  int n = int_field(j, "n", path);
  if (!is_odd_prime(d)) throw SchemaError(path + "/d", "d must be an odd prime");
  if (j.contains("state")) {
    std::string name = field(j, "state", path).get<std::string>();
    if (name == "stabilizer-zero") return DensityState::computational_zero(n, d);
    if (name == "maximally-mixed") return DensityState::maximally_mixed(n, d);
    throw SchemaError(path + "/state", "unknown named state \"" + name + "\"");
  }
  const json& rj = field(j, "rho", path);
  int64_t dim = dense_dim(n, d);
  if (!rj.is_array() || static_cast<int64_t>(rj.size()) != dim)
    throw SchemaError(path + "/rho", "expected a d^n x d^n matrix");
  DenseOperator rho(dim, dim);
  for (int64_t r = 0; r < dim; ++r) {
    const json& rowj = rj[r];
    if (!rowj.is_array() || static_cast<int64_t>(rowj.size()) != dim)
      throw SchemaError(path + "/rho", "expected a d^n x d^n matrix");
    for (int64_t c = 0; c < dim; ++c) {
      const json& e = rowj[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw SchemaError(path + "/rho", "entries must be [re, im] pairs");
      rho(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  }
  DensityState s{n, d, rho};
  try {
    s.validate();
  } catch (const std::invalid_argument& ex) {
    throw SchemaError(path + "/rho", ex.what());
  }
  return s;
}

json state_to_json(const DensityState& s) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "state";
  out["d"] = s.d;
  out["n"] = s.n;
  json rows = json::array();
  for (Eigen::Index r = 0; r < s.rho.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < s.rho.cols(); ++c)
      row.push_back(json::array({s.rho(r, c).real(), s.rho(r, c).imag()}));
    rows.push_back(row);
  }
  out["rho"] = rows;
  return out;
}

// ---------------------------------------------------------------------------
// reports

json shot_to_json(uint64_t index, const std::map<std::string, fe>& outcomes) {
  json out;
  out["shot"] = index;
  json o;
  for (const auto& [var, val] : outcomes) o[var] = val;
  out["outcomes"] = o;
  return out;
}

json decomposition_to_json(const Decomposition& dec, const std::string& mode) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "decomposition";
  out["mode"] = mode;
  out["exact"] = false;
  out["feasible"] = dec.feasible;
  if (dec.feasible) {
    out["objective"] = dec.objective;
    out["residual"] = dec.residual;
    json coeffs = json::array();
    for (size_t i = 0; i < dec.coefficients.size(); ++i) {
      if (std::abs(dec.coefficients[i]) < 1e-12) continue;
      json e;
      e["index"] = i;
      e["value"] = dec.coefficients[i];
      coeffs.push_back(e);
    }
    out["coefficients"] = coeffs;
  } else {
    json cert;
    cert["y"] = dec.farkas;
    cert["verified"] = dec.certificate_verified;
    out["certificate"] = cert;
  }
  return out;
}

json exact_decomposition_to_json(const ExactDecomposition& dec,
                                 const std::string& mode) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "decomposition";
  out["mode"] = mode;
  out["exact"] = true;
  out["feasible"] = dec.feasible;
  auto rat = [](const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
  };
  if (dec.feasible) {
    json coeffs = json::array();
    for (size_t i = 0; i < dec.coefficients.size(); ++i) {
      if (dec.coefficients[i] == 0) continue;
      json e;
      e["index"] = i;
      e["value"] = rat(dec.coefficients[i]);
      coeffs.push_back(e);
    }
    out["coefficients"] = coeffs;
  } else {
    json cert;
    json y = json::array();
    for (const auto& v : dec.farkas) y.push_back(rat(v));
    cert["y"] = y;
    cert["verified"] = dec.certificate_verified;
    out["certificate"] = cert;
  }
  return out;
}

json lambda_report_to_json(const LambdaReport& rep) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "lambda-report";
  out["member"] = rep.member;
  out["min_overlap"] = rep.min_overlap;
  out["violating_stabilizer"] = rep.violating_index;
  return out;
}

}  // namespace cnc::io
