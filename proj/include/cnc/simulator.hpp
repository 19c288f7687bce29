// Sampling simulators for magic-state circuits.
//
// run_wigner: phase-space labels u in V = Z_d^{2n}; gates act affinely,
// a measurement of a returns [a,u] and resamples the label uniformly
// from u + <a>.
//
// run_cnc: phase points (Omega, gamma); gates act by the symplectic
// update, measurements by the isotropic projection rule: a known label
// (a in Omega) yields gamma(a) deterministically and restricts to
// Omega ∩ a^perp; an unknown one yields a uniform outcome s and moves to
// (<a> + Omega ∩ a^perp, gamma x s).
//
// Both refuse negative input distributions; per-shot RNG substreams are
// derived from (seed, shot index) so shot sets are reproducible and
// order-independent.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cnc/circuit.hpp"
#include "cnc/cnc_set.hpp"

namespace cnc {

struct WeightedPoint {
  PhasePoint point;
  double weight = 0;
};

struct Ensemble {
  int d = 3;
  int n = 1;
  std::vector<WeightedPoint> points;
  // weights nonnegative and normalized within tolerance
  void validate(double tol = 1e-9) const;
};

struct WignerDistribution {
  int d = 3;
  int n = 1;
  std::vector<std::pair<Vec, double>> weights;
  void validate(double tol = 1e-9) const;
};

struct ShotRecord {
  std::map<std::string, fe> outcomes;
  PhasePoint final_point;  // diagnostic
};

// Deterministic per-shot substream: splitmix64 over (seed, shot).
class ShotRng {
 public:
  ShotRng(uint64_t seed, uint64_t shot);
  fe uniform_fe(int d);
  double uniform01();
  // index into cumulative weights (sum to 1)
  std::size_t categorical(const std::vector<double>& cumulative);

 private:
  std::mt19937_64 eng_;
};

// ---------------------------------------------------------------------------
// Measurement updates (the projection machinery behind both rules)

struct SingleMeasurement {
  fe outcome = 0;
  PhasePoint point;
};

struct IsotropicUpdate {
  bool accept = false;
  // acceptance weight |Omega ∩ I| / |I| as an exact fraction
  uint64_t weight_num = 0;
  uint64_t weight_den = 1;
  PhasePoint point;  // valid only when accept
};

// Outcome gamma(a) (deterministic) when a lies in Omega, else the given
// sampled s; throws on a zero label.
SingleMeasurement measure_update_single(const PhasePoint& p, const Vec& a,
                                        ShotRng& rng);
SingleMeasurement measure_update_single_with_outcome(const PhasePoint& p,
                                                     const Vec& a, fe s);

// Lemma-style simultaneous measurement of an isotropic subspace.
IsotropicUpdate measure_update_isotropic(const PhasePoint& p,
                                         const OutcomeAssignment& r);

// ---------------------------------------------------------------------------

std::vector<ShotRecord> run_cnc(const Ensemble& ensemble, const Circuit& circuit,
                                uint64_t seed, uint64_t shots, int threads = 0);

struct WignerShot {
  std::map<std::string, fe> outcomes;
  Vec final_label;
};

std::vector<WignerShot> run_wigner(const WignerDistribution& dist,
                                   const Circuit& circuit, uint64_t seed,
                                   uint64_t shots, int threads = 0);

// Empirical joint distribution over outcome tuples in measurement order.
std::map<std::vector<fe>, double> empirical_distribution(
    const std::vector<ShotRecord>& shots, const std::vector<std::string>& vars);
std::map<std::vector<fe>, double> empirical_distribution(
    const std::vector<WignerShot>& shots, const std::vector<std::string>& vars);

}  // namespace cnc
