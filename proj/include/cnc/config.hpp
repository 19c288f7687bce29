// Resource caps shared across modules.  All caps are configuration, not
// claims: they are surfaced in reports so truncated runs are visible.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cnc {

inline constexpr int kDefaultDenseCap = 250;       // max Hilbert dim d^n
inline constexpr int64_t kDefaultBranchCap = 729;  // max oracle branches d^m
inline constexpr std::size_t kDefaultClosureCap = 6561;  // max |closure|

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Caps {
  int dense_cap = kDefaultDenseCap;
  int64_t branch_cap = kDefaultBranchCap;
  std::size_t closure_cap = kDefaultClosureCap;
  int max_xi = 0;              // 0 = derive default 2*n*d
  uint64_t max_points = 200000;

  int effective_max_xi(int n, int d) const {
    return max_xi > 0 ? max_xi : 2 * n * d;
  }
};

}  // namespace cnc
