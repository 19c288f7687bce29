// JSON interchange: circuits, ensembles, Wigner distributions, states,
// phase points and reports.  Every ingested document is schema-checked
// before use; errors carry a JSON-pointer-style path.  All emitters use
// ordered keys so identical runs produce identical bytes.

#pragma once

#include <string>

#include "json.hpp"

#include "cnc/analysis.hpp"
#include "cnc/oracle.hpp"
#include "cnc/simulator.hpp"

namespace cnc::io {

using json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// vectors serialize as [z_1..z_n, x_1..x_n]
json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j, int n, int d, const std::string& path);

json point_to_json(const PhasePoint& p);
PhasePoint point_from_json(const json& j, int n, int d, const std::string& path);

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json ensemble_to_json(const Ensemble& e);
Ensemble ensemble_from_json(const json& j);

json wigner_distribution_to_json(const WignerDistribution& w);
WignerDistribution wigner_distribution_from_json(const json& j);

// {"rho": [[[re,im],...],...]} or {"state": "stabilizer-zero"|"maximally-mixed"}
DensityState state_from_json(const json& j);
json state_to_json(const DensityState& s);

json shot_to_json(uint64_t index, const std::map<std::string, fe>& outcomes);
json decomposition_to_json(const Decomposition& dec, const std::string& mode);
json exact_decomposition_to_json(const ExactDecomposition& dec,
                                 const std::string& mode);
json lambda_report_to_json(const LambdaReport& rep);

}  // namespace cnc::io
