// Command-line entry point.
//
// Commands: simulate | decompose | enumerate | lambda | verify.
// Exit codes: 0 success, 2 validation error, 3 cap exceeded,
// 4 verification failure.  CNC_THREADS caps shot-level workers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cnc/analysis.hpp"
#include "cnc/io.hpp"
#include "cnc/oracle.hpp"
#include "cnc/simulator.hpp"

namespace {

using cnc::io::json;

int thread_count() {
  const char* env = std::getenv("CNC_THREADS");
  if (!env) return 1;
  int t = std::atoi(env);
  return t > 0 ? t : 1;
}

json caps_to_json(const cnc::Caps& caps, int n, int d) {
  json out;
  out["dense_cap"] = caps.dense_cap;
  out["branch_cap"] = caps.branch_cap;
  out["closure_cap"] = caps.closure_cap;
  out["max_xi"] = caps.effective_max_xi(n, d);
  out["max_points"] = caps.max_points;
  return out;
}

struct PointsFile {
  int n = 1;
  int d = 3;
  std::vector<cnc::PhasePoint> points;
};

PointsFile points_from_json(const json& j) {
  const std::string path = "phase-points";
  if (!j.is_object() || !j.contains("kind") || j["kind"] != "phase-points")
    throw cnc::io::SchemaError(path + "/kind", "expected \"phase-points\"");
  PointsFile out;
  out.d = j.at("d").get<int>();
  out.n = j.at("n").get<int>();
  const json& pts = j.at("points");
  for (size_t i = 0; i < pts.size(); ++i)
    out.points.push_back(cnc::io::point_from_json(
        pts[i], out.n, out.d, path + "/points/" + std::to_string(i)));
  return out;
}

json points_to_json(int n, int d, const std::vector<cnc::PhasePoint>& points,
                    const cnc::Caps& caps, bool truncated) {
  json out;
  out["format"] = "cnc/1";
  out["kind"] = "phase-points";
  out["d"] = d;
  out["n"] = n;
  out["caps"] = caps_to_json(caps, n, d);
  out["count"] = points.size();
  out["truncated"] = truncated;
  json pts = json::array();
  for (const auto& p : points) pts.push_back(cnc::io::point_to_json(p));
  out["points"] = pts;
  return out;
}

// Dense operator of either a "state" file or a single phase point wrapped
// in a {"kind":"phase-point","point":{...}} file.
cnc::DenseOperator operator_from_file(const std::string& path, int& n, int& d,
                                      cnc::PhasePoint* point_out = nullptr) {
  json j = cnc::io::read_json_file(path);
  if (j.is_object() && j.contains("kind") && j["kind"] == "phase-point") {
    d = j.at("d").get<int>();
    n = j.at("n").get<int>();
    cnc::PhasePoint p =
        cnc::io::point_from_json(j.at("point"), n, d, "phase-point/point");
    if (point_out) *point_out = p;
    return cnc::phase_point_operator(p);
  }
  cnc::DensityState s = cnc::io::state_from_json(j);
  n = s.n;
  d = s.d;
  return s.rho;
}

std::map<std::vector<cnc::fe>, double> summarize(
    const json& shots_summary_target, const std::vector<std::string>& vars);

int cmd_simulate(const std::string& circuit_path, const std::string& input_path,
                 uint64_t shots, uint64_t seed, const std::string& algorithm,
                 const std::string& out_path, bool verify, double tv_threshold,
                 cnc::Caps caps) {
  cnc::Circuit circuit = cnc::io::circuit_from_json(cnc::io::read_json_file(circuit_path));
  auto vars = circuit.measurement_vars();
  std::ostringstream lines;
  std::map<std::vector<cnc::fe>, double> empirical;
  cnc::DenseOperator rho;

  if (algorithm == "cnc") {
    cnc::Ensemble e = cnc::io::ensemble_from_json(cnc::io::read_json_file(input_path));
    auto shots_v = cnc::run_cnc(e, circuit, seed, shots, thread_count());
    for (uint64_t i = 0; i < shots_v.size(); ++i)
      lines << cnc::io::shot_to_json(i, shots_v[i].outcomes).dump() << "\n";
    empirical = cnc::empirical_distribution(shots_v, vars);
    if (verify) {
      rho = cnc::DenseOperator::Zero(cnc::dense_dim(circuit.n, circuit.d, caps.dense_cap),
                                     cnc::dense_dim(circuit.n, circuit.d, caps.dense_cap));
      for (const auto& wp : e.points)
        rho += wp.weight * cnc::phase_point_operator(wp.point, caps.dense_cap);
    }
  } else {
    cnc::WignerDistribution w =
        cnc::io::wigner_distribution_from_json(cnc::io::read_json_file(input_path));
    auto shots_v = cnc::run_wigner(w, circuit, seed, shots, thread_count());
    for (uint64_t i = 0; i < shots_v.size(); ++i)
      lines << cnc::io::shot_to_json(i, shots_v[i].outcomes).dump() << "\n";
    empirical = cnc::empirical_distribution(shots_v, vars);
    if (verify) {
      rho = cnc::DenseOperator::Zero(cnc::dense_dim(circuit.n, circuit.d, caps.dense_cap),
                                     cnc::dense_dim(circuit.n, circuit.d, caps.dense_cap));
      for (const auto& [u, p] : w.weights)
        rho += p * cnc::wigner_operator(u, caps.dense_cap);
    }
  }

  json summary;
  summary["format"] = "cnc/1";
  summary["kind"] = "summary";
  summary["algorithm"] = algorithm;
  summary["shots"] = shots;
  summary["seed"] = seed;
  summary["caps"] = caps_to_json(caps, circuit.n, circuit.d);
  json emp = json::array();
  for (const auto& [tuple, p] : empirical) {
    json e;
    json outcomes;
    for (size_t k = 0; k < vars.size(); ++k) outcomes[vars[k]] = tuple[k];
    e["outcomes"] = outcomes;
    e["p"] = p;
    emp.push_back(e);
  }
  summary["empirical"] = emp;

  bool pass = true;
  if (verify) {
    auto oracle = cnc::joint_distribution(rho, circuit, caps.branch_cap, caps.dense_cap);
    double tv = cnc::tv_distance(empirical, oracle);
    summary["tv_vs_oracle"] = tv;
    summary["tv_threshold"] = tv_threshold;
    pass = tv <= tv_threshold;
    summary["pass"] = pass;
  }
  lines << json({{"summary", summary}}).dump() << "\n";
  cnc::io::write_text_file(out_path, lines.str());
  if (verify && !pass) return 4;
  return 0;
}

int cmd_enumerate(int n, int d, const std::string& out_path, cnc::Caps caps) {
  cnc::require_odd_prime(d);
  cnc::PhasePointEnumerator en(n, d, caps);
  std::vector<cnc::PhasePoint> points;
  while (auto p = en.next()) points.push_back(std::move(*p));
  json out = points_to_json(n, d, points, caps, en.truncated());
  cnc::io::write_text_file(out_path, out.dump(1) + "\n");
  return 0;
}

int cmd_decompose(const std::string& state_path, const std::string& dictionary,
                  const std::string& mode_name, bool exact,
                  const std::string& out_path, cnc::Caps caps) {
  int n = 1, d = 3;
  cnc::PhasePoint target_point;
  bool have_point = false;
  cnc::DenseOperator rho;
  {
    json j = cnc::io::read_json_file(state_path);
    if (j.is_object() && j.contains("kind") && j["kind"] == "phase-point") {
      d = j.at("d").get<int>();
      n = j.at("n").get<int>();
      target_point =
          cnc::io::point_from_json(j.at("point"), n, d, "phase-point/point");
      have_point = true;
      rho = cnc::phase_point_operator(target_point, caps.dense_cap);
    } else {
      cnc::DensityState s = cnc::io::state_from_json(j);
      n = s.n;
      d = s.d;
      rho = s.rho;
    }
  }
  std::vector<cnc::PhasePoint> dict;
  if (dictionary == "wigner") {
    dict = cnc::wigner_dictionary(n, d);
  } else if (dictionary == "full") {
    dict = cnc::full_dictionary(n, d, caps);
  } else {
    PointsFile f = points_from_json(cnc::io::read_json_file(dictionary));
    if (f.n != n || f.d != d)
      throw cnc::io::SchemaError("phase-points", "dictionary dimension mismatch");
    dict = f.points;
  }
  cnc::DecomposeMode mode = mode_name == "min-negativity"
                                ? cnc::DecomposeMode::MinNegativity
                                : cnc::DecomposeMode::Feasibility;
  json out;
  if (exact) {
    if (!have_point)
      throw cnc::io::SchemaError(
          "state", "--exact requires a phase-point target (kind \"phase-point\")");
    auto dec = cnc::cnc_decompose_exact(target_point, dict, mode);
    out = cnc::io::exact_decomposition_to_json(dec, mode_name);
  } else {
    auto dec = cnc::cnc_decompose(rho, n, d, dict, mode, caps.dense_cap);
    out = cnc::io::decomposition_to_json(dec, mode_name);
  }
  out["dictionary"] = dictionary;
  out["caps"] = caps_to_json(caps, n, d);
  cnc::io::write_text_file(out_path, out.dump(1) + "\n");
  return 0;
}

int cmd_lambda(const std::string& operator_path, const std::string& out_path,
               cnc::Caps caps) {
  int n = 1, d = 3;
  cnc::DenseOperator x = operator_from_file(operator_path, n, d);
  auto rep = cnc::lambda_membership(x, n, d, caps.dense_cap);
  json out = cnc::io::lambda_report_to_json(rep);
  out["caps"] = caps_to_json(caps, n, d);
  cnc::io::write_text_file(out_path, out.dump(1) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CNC phase-space simulator and analysis toolkit"};
  app.require_subcommand(1);
  cnc::Caps caps;

  // simulate / verify share flags
  std::string circuit_path, input_path, out_path, algorithm = "cnc";
  uint64_t shots = 1000, seed = 0;
  bool seed_set = false;
  double tv_threshold = 0.02;

  auto add_caps = [&](CLI::App* cmd) {
    cmd->add_option("--dense-cap", caps.dense_cap, "max dense dimension d^n");
    cmd->add_option("--branch-cap", caps.branch_cap, "max oracle branches");
    cmd->add_option("--max-xi", caps.max_xi, "max noncommuting generators");
    cmd->add_option("--max-points", caps.max_points, "max enumerated points");
  };

  CLI::App* sim = app.add_subcommand("simulate", "sample a circuit");
  sim->add_option("--circuit", circuit_path, "circuit JSON")->required();
  sim->add_option("--input", input_path, "ensemble or distribution JSON")->required();
  sim->add_option("--shots", shots, "number of shots")->required();
  sim->add_option("--seed", seed, "RNG seed")->required()->each([&](const std::string&) {
    seed_set = true;
  });
  sim->add_option("--algorithm", algorithm, "cnc | wigner")
      ->check(CLI::IsMember({"cnc", "wigner"}));
  sim->add_option("--out", out_path, "output JSONL path")->required();
  bool sim_verify = false;
  sim->add_flag("--verify", sim_verify, "compare against the dense oracle");
  sim->add_option("--tv-threshold", tv_threshold, "verification TV threshold");
  add_caps(sim);

  CLI::App* ver = app.add_subcommand("verify", "simulate and compare to the oracle");
  ver->add_option("--circuit", circuit_path, "circuit JSON")->required();
  ver->add_option("--input", input_path, "ensemble or distribution JSON")->required();
  ver->add_option("--shots", shots, "number of shots")->required();
  ver->add_option("--seed", seed, "RNG seed")->required();
  ver->add_option("--algorithm", algorithm, "cnc | wigner")
      ->check(CLI::IsMember({"cnc", "wigner"}));
  ver->add_option("--out", out_path, "report path")->required();
  ver->add_option("--tv-threshold", tv_threshold, "TV acceptance threshold");
  add_caps(ver);

  int enum_n = 1, enum_d = 3;
  CLI::App* en = app.add_subcommand("enumerate", "enumerate phase points");
  en->add_option("--n", enum_n, "number of qudits")->required();
  en->add_option("--d", enum_d, "qudit dimension (odd prime)")->required();
  en->add_option("--out", out_path, "output path")->required();
  add_caps(en);

  std::string state_path, dictionary = "full", mode_name = "feasibility";
  bool exact = false;
  CLI::App* dec = app.add_subcommand("decompose", "LP decomposition of a state");
  dec->add_option("--state", state_path, "state or phase-point JSON")->required();
  dec->add_option("--dictionary", dictionary, "full | wigner | PATH");
  dec->add_option("--mode", mode_name, "feasibility | min-negativity")
      ->check(CLI::IsMember({"feasibility", "min-negativity"}));
  dec->add_flag("--exact", exact, "exact rational certificates");
  dec->add_option("--out", out_path, "output path")->required();
  add_caps(dec);

  std::string operator_path;
  CLI::App* lam = app.add_subcommand("lambda", "stabilizer-overlap membership");
  lam->add_option("--operator", operator_path, "state or phase-point JSON")->required();
  lam->add_option("--out", out_path, "output path")->required();
  add_caps(lam);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(circuit_path, input_path, shots, seed, algorithm,
                          out_path, sim_verify, tv_threshold, caps);
    if (ver->parsed())
      return cmd_simulate(circuit_path, input_path, shots, seed, algorithm,
                          out_path, true, tv_threshold, caps);
    if (en->parsed()) return cmd_enumerate(enum_n, enum_d, out_path, caps);
    if (dec->parsed())
      return cmd_decompose(state_path, dictionary, mode_name, exact, out_path, caps);
    if (lam->parsed()) return cmd_lambda(operator_path, out_path, caps);
  } catch (const cnc::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const cnc::ClosureCapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const cnc::io::SchemaError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
