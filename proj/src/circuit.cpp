#include "cnc/circuit.hpp"

#include <set>

namespace cnc {

bool Condition::holds(const std::map<std::string, fe>& outcomes, int d) const {
  int64_t acc = constant;
  for (const auto& [var, coef] : coeffs) {
    auto it = outcomes.find(var);
    if (it == outcomes.end())
      throw std::invalid_argument("unbound condition variable: " + var);
    acc += int64_t(coef) * it->second;
  }
  return normalize_mod(acc, d) == 0;
}

void Circuit::validate() const {
  require_odd_prime(d);
  if (n < 1) throw std::invalid_argument("circuit needs n >= 1");
  std::set<std::string> bound;
  for (size_t i = 0; i < instructions.size(); ++i) {
    auto at = [&] { return " (instruction " + std::to_string(i) + ")"; };
    if (const auto* m = std::get_if<MeasureInstruction>(&instructions[i])) {
      if (m->label.n != n || m->label.d != d)
        throw std::invalid_argument("measurement label mismatch" + at());
      if (m->label.is_zero())
        throw std::invalid_argument("zero measurement label" + at());
      if (m->var.empty() || bound.count(m->var))
        throw std::invalid_argument("bad or duplicate outcome variable" + at());
      bound.insert(m->var);
    } else if (const auto* g = std::get_if<GateInstruction>(&instructions[i])) {
      if (g->element.n != n || g->element.d != d)
        throw std::invalid_argument("gate dimension mismatch" + at());
    } else if (const auto* c = std::get_if<CondGateInstruction>(&instructions[i])) {
      if (c->gate.element.n != n || c->gate.element.d != d)
        throw std::invalid_argument("gate dimension mismatch" + at());
      for (const auto& [var, coef] : c->condition.coeffs) {
        (void)coef;
        if (!bound.count(var))
          throw std::invalid_argument("condition uses unbound variable " + var + at());
      }
    }
  }
}

std::vector<std::string> Circuit::measurement_vars() const {
  std::vector<std::string> out;
  for (const auto& ins : instructions)
    if (const auto* m = std::get_if<MeasureInstruction>(&ins))
      out.push_back(m->var);
  return out;
}

int Circuit::measurement_count() const {
  return static_cast<int>(measurement_vars().size());
}

}  // namespace cnc
