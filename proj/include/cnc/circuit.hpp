// Adaptive Clifford+Pauli circuits: gate records, Pauli measurements
// bound to outcome variables, and gates conditioned on affine functions
// of previously bound outcomes over Z_d.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cnc/clifford.hpp"
#include "cnc/symplectic.hpp"

namespace cnc {

struct GateSpec {        // named-gate origin, kept for dense oracles
  GateName name;
  std::vector<int> qudits;
  int param = 1;
};

struct GateInstruction {
  CliffordElement element;
  std::optional<GateSpec> spec;  // nullopt for raw (S, b) gates
};

struct MeasureInstruction {
  Vec label;        // nonzero
  std::string var;  // outcome variable name
};

struct Condition {
  std::map<std::string, fe> coeffs;  // variable -> coefficient
  fe constant = 0;
  // Fires iff sum coeffs[v] * outcome[v] + constant == 0 (mod d).
  bool holds(const std::map<std::string, fe>& outcomes, int d) const;
};

struct CondGateInstruction {
  Condition condition;
  GateInstruction gate;
};

using Instruction =
    std::variant<GateInstruction, MeasureInstruction, CondGateInstruction>;

struct Circuit {
  int d = 3;
  int n = 1;
  std::vector<Instruction> instructions;

  // Variables bound before use, labels nonzero, matching (n, d).
  // Throws std::invalid_argument with the offending instruction index.
  void validate() const;
  std::vector<std::string> measurement_vars() const;
  int measurement_count() const;
};

}  // namespace cnc
