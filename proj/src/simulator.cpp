#include "cnc/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace cnc {

void Ensemble::validate(double tol) const {
  double total = 0;
  for (const auto& wp : points) {
    if (wp.point.n() != n || wp.point.d() != d)
      throw std::invalid_argument("ensemble point dimension mismatch");
    if (wp.weight < -tol)
      throw std::invalid_argument(
          "ensemble has a negative weight; sampling applies only to "
          "nonnegative representations");
    total += wp.weight;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("ensemble weights must sum to 1");
}

void WignerDistribution::validate(double tol) const {
  double total = 0;
  for (const auto& [u, w] : weights) {
    if (u.n != n || u.d != d)
      throw std::invalid_argument("distribution label dimension mismatch");
    if (w < -tol)
      throw std::invalid_argument(
          "distribution has a negative weight; sampling applies only to "
          "nonnegative representations");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("distribution weights must sum to 1");
}

// ---------------------------------------------------------------------------

static uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ShotRng::ShotRng(uint64_t seed, uint64_t shot)
    : eng_(splitmix64(splitmix64(seed) ^ splitmix64(shot * 0x9e3779b97f4a7c15ULL + 1))) {}

fe ShotRng::uniform_fe(int d) {
  // rejection sampling keeps the stream portable across implementations
  uint64_t bound = (UINT64_MAX / d) * d;
  uint64_t v;
  do {
    v = eng_();
  } while (v >= bound);
  return static_cast<fe>(v % d);
}

double ShotRng::uniform01() {
  return (eng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
}

std::size_t ShotRng::categorical(const std::vector<double>& cumulative) {
  double u = uniform01();
  auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) return cumulative.size() - 1;
  return static_cast<std::size_t>(it - cumulative.begin());
}

// ---------------------------------------------------------------------------
// Isotropic projection: the common machinery behind the measurement rules.

namespace {

uint64_t pow_u64(int base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// gamma x r evaluated on I + (Omega ∩ I^perp), all data from the old point.
struct CombinedAssignment {
  const PhasePoint* p;
  const OutcomeAssignment* r;
  Subspace k_part;             // old-set piece of the new core (subset of Omega)
  std::vector<Vec> survivors;  // generators of the new coset structure
  int d;

  fe eval_core(const Vec& v) const {
    // v = i + w with i in I, w in k_part; any split works in the accept case.
    const auto& ibasis = r->subspace().basis();
    const auto& kbasis = k_part.basis();
    size_t cols = ibasis.size() + kbasis.size();
    std::vector<std::vector<fe>> a(v.c.size(), std::vector<fe>(cols, 0));
    for (size_t j = 0; j < ibasis.size(); ++j)
      for (size_t row = 0; row < v.c.size(); ++row) a[row][j] = ibasis[j].c[row];
    for (size_t j = 0; j < kbasis.size(); ++j)
      for (size_t row = 0; row < v.c.size(); ++row)
        a[row][ibasis.size() + j] = kbasis[j].c[row];
    auto sol = solve_mod(a, v.c, d);
    if (!sol.consistent)
      throw std::logic_error("post-measurement core decomposition failed");
    int64_t acc = 0;
    Vec w(v.n, v.d);
    for (size_t j = 0; j < ibasis.size(); ++j)
      acc += int64_t(sol.particular[j]) * r->values()[j];
    for (size_t j = 0; j < kbasis.size(); ++j)
      if (sol.particular[ibasis.size() + j] != 0)
        w = w + kbasis[j].scaled(sol.particular[ibasis.size() + j]);
    acc += p->gamma_of(w);
    return normalize_mod(acc, d);
  }

  fe eval(const Vec& v, const Subspace& new_core) const {
    Vec red = new_core.reduce(v);
    if (red.is_zero()) return eval_core(v);
    for (const auto& g : survivors) {
      Vec gred = new_core.reduce(g);
      for (fe s = 1; s < d; ++s) {
        if (gred.scaled(s) == red) {
          Vec w = v - g.scaled(s);
          return normalize_mod(int64_t(s) * p->gamma_of(g) + eval_core(w), d);
        }
      }
    }
    throw std::logic_error("post-measurement evaluation outside the new set");
  }
};

}  // namespace

IsotropicUpdate measure_update_isotropic(const PhasePoint& p,
                                         const OutcomeAssignment& r) {
  const Subspace& I = r.subspace();
  int d = p.d();
  IsotropicUpdate out;
  out.weight_den = I.element_count();

  // (1) Agreement of r and gamma on Omega ∩ I decides the zero-trace case;
  //     the overlap size gives the acceptance weight.
  auto agree_on = [&](const Subspace& piece) {
    for (const auto& row : piece.basis())
      if (p.gamma_of(row) != r.eval(row)) return false;
    return true;
  };

  uint64_t overlap = 0;
  bool agree = true;
  if (p.set.kind() == CncKind::LinearSubspace) {
    Subspace piece = intersect(p.set.space(), I);
    agree = agree_on(piece);
    overlap = piece.element_count();
  } else {
    Subspace core_piece = intersect(p.set.core(), I);
    agree = agree_on(core_piece);
    overlap = core_piece.element_count();
    for (const auto& g : p.set.generators()) {
      std::vector<Vec> petal_rows = p.set.core().basis();
      petal_rows.push_back(g);
      Subspace piece = intersect(span(petal_rows), I);
      if (!agree_on(piece)) agree = false;
      overlap += piece.element_count() - core_piece.element_count();
    }
  }
  if (!agree) {
    out.accept = false;
    out.weight_num = 0;
    out.point = p;
    return out;
  }
  out.accept = true;
  out.weight_num = overlap;

  // (2) New point (I + Omega ∩ I^perp, gamma x r).
  Subspace perp = orthogonal_complement(I);
  if (p.set.kind() == CncKind::LinearSubspace) {
    // The new set is the plain subspace I + (Omega ∩ I^perp); every element
    // splits as i + w, so the combined assignment needs no coset matching.
    Subspace k_part = intersect(p.set.space(), perp);
    Subspace w = subspace_sum(I, k_part);
    CncSet set = CncSet::subspace(w);
    CombinedAssignment comb{&p, &r, k_part, {}, d};
    ValueAssignment gamma = assignment_from_function(
        set, [&](const Vec& v) { return comb.eval_core(v); });
    out.point = PhasePoint{set, gamma};
    return out;
  }

  Subspace k_part = intersect(p.set.core(), perp);
  Subspace new_core = subspace_sum(I, k_part);
  std::vector<Vec> survivors;
  for (const auto& g : p.set.generators()) {
    std::vector<Vec> petal_rows = p.set.core().basis();
    petal_rows.push_back(g);
    Subspace piece = intersect(span(petal_rows), perp);
    for (const auto& row : piece.basis()) {
      if (!new_core.contains(row)) {
        survivors.push_back(row);
        break;
      }
    }
  }
  CncSet set = CncSet::cone(new_core, survivors);
  CombinedAssignment comb{&p, &r, k_part, survivors, d};
  // The eval needs the coset structure relative to the new core, which is
  // the same subspace regardless of how cone() retagged the result.
  ValueAssignment gamma = assignment_from_function(
      set, [&](const Vec& v) { return comb.eval(v, new_core); });
  out.point = PhasePoint{set, gamma};
  return out;
}

SingleMeasurement measure_update_single_with_outcome(const PhasePoint& p,
                                                     const Vec& a, fe s) {
  if (a.is_zero()) throw std::invalid_argument("zero measurement label");
  bool inside = p.set.contains(a);
  if (inside) {
    s = p.gamma_of(a);
  } else {
    // Quotient-structure check: a outside Omega implies <a> meets Omega
    // only at 0, so gamma x s is always consistent.
    for (fe t = 1; t < p.d(); ++t)
      if (p.set.contains(a.scaled(t)))
        throw std::logic_error("scalar multiple of an outside label inside the set");
  }
  auto upd = measure_update_isotropic(p, OutcomeAssignment::single(a, s));
  if (!upd.accept)
    throw std::logic_error("consistent measurement branch was rejected");
  return SingleMeasurement{s, upd.point};
}

SingleMeasurement measure_update_single(const PhasePoint& p, const Vec& a,
                                        ShotRng& rng) {
  if (a.is_zero()) throw std::invalid_argument("zero measurement label");
  fe s = p.set.contains(a) ? 0 : rng.uniform_fe(p.d());
  return measure_update_single_with_outcome(p, a, s);
}

// ---------------------------------------------------------------------------

template <typename Shot, typename RunOne>
static std::vector<Shot> run_shots(uint64_t shots, int threads, RunOne run_one) {
  std::vector<Shot> out(shots);
  if (threads <= 1) {
    for (uint64_t i = 0; i < shots; ++i) out[i] = run_one(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::atomic<uint64_t> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      uint64_t i;
      while ((i = next.fetch_add(1)) < shots) out[i] = run_one(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<ShotRecord> run_cnc(const Ensemble& ensemble, const Circuit& circuit,
                                uint64_t seed, uint64_t shots, int threads) {
  ensemble.validate();
  circuit.validate();
  if (ensemble.d != circuit.d || ensemble.n != circuit.n)
    throw std::invalid_argument("ensemble/circuit dimension mismatch");
  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& wp : ensemble.points) {
    acc += std::max(0.0, wp.weight);
    cumulative.push_back(acc);
  }
  for (auto& c : cumulative) c /= acc;

  auto run_one = [&](uint64_t shot) {
    ShotRng rng(seed, shot);
    PhasePoint p = ensemble.points[rng.categorical(cumulative)].point;
    ShotRecord rec;
    for (const auto& ins : circuit.instructions) {
      if (const auto* g = std::get_if<GateInstruction>(&ins)) {
        p = act_on_phase_point(g->element, p);
      } else if (const auto* cg = std::get_if<CondGateInstruction>(&ins)) {
        if (cg->condition.holds(rec.outcomes, circuit.d))
          p = act_on_phase_point(cg->gate.element, p);
      } else if (const auto* m = std::get_if<MeasureInstruction>(&ins)) {
        auto res = measure_update_single(p, m->label, rng);
        rec.outcomes[m->var] = res.outcome;
        p = std::move(res.point);
      }
    }
    rec.final_point = std::move(p);
    return rec;
  };
  return run_shots<ShotRecord>(shots, threads, run_one);
}

std::vector<WignerShot> run_wigner(const WignerDistribution& dist,
                                   const Circuit& circuit, uint64_t seed,
                                   uint64_t shots, int threads) {
  dist.validate();
  circuit.validate();
  if (dist.d != circuit.d || dist.n != circuit.n)
    throw std::invalid_argument("distribution/circuit dimension mismatch");
  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& [u, w] : dist.weights) {
    acc += std::max(0.0, w);
    cumulative.push_back(acc);
  }
  for (auto& c : cumulative) c /= acc;

  auto run_one = [&](uint64_t shot) {
    ShotRng rng(seed, shot);
    Vec u = dist.weights[rng.categorical(cumulative)].first;
    WignerShot rec;
    for (const auto& ins : circuit.instructions) {
      if (const auto* g = std::get_if<GateInstruction>(&ins)) {
        u = act_on_wigner_label(g->element, u);
      } else if (const auto* cg = std::get_if<CondGateInstruction>(&ins)) {
        if (cg->condition.holds(rec.outcomes, circuit.d))
          u = act_on_wigner_label(cg->gate.element, u);
      } else if (const auto* m = std::get_if<MeasureInstruction>(&ins)) {
        rec.outcomes[m->var] = symplectic_product(m->label, u);
        // resample within Gamma_{a,u} = u + <a>
        u = u + m->label.scaled(rng.uniform_fe(circuit.d));
      }
    }
    rec.final_label = std::move(u);
    return rec;
  };
  return run_shots<WignerShot>(shots, threads, run_one);
}

template <typename Shot>
static std::map<std::vector<fe>, double> empirical_impl(
    const std::vector<Shot>& shots, const std::vector<std::string>& vars) {
  std::map<std::vector<fe>, double> out;
  for (const auto& s : shots) {
    std::vector<fe> key;
    for (const auto& v : vars) key.push_back(s.outcomes.at(v));
    out[key] += 1.0;
  }
  for (auto& [k, v] : out) v /= static_cast<double>(shots.size());
  return out;
}

std::map<std::vector<fe>, double> empirical_distribution(
    const std::vector<ShotRecord>& shots, const std::vector<std::string>& vars) {
  return empirical_impl(shots, vars);
}

std::map<std::vector<fe>, double> empirical_distribution(
    const std::vector<WignerShot>& shots, const std::vector<std::string>& vars) {
  return empirical_impl(shots, vars);
}

}  // namespace cnc
