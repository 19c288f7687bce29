// Dense two-phase tableau simplex, templated over the scalar so the same
// code runs in double precision (feasibility tolerance 1e-7) and in exact
// rational arithmetic for certificates.  Bland's rule guarantees
// termination in the exact instantiation; the double instantiation uses
// Dantzig pricing with a Bland fallback.
//
// Problems are in standard form:  min c^T x  s.t.  A x = b,  x >= 0.
// Infeasibility is certified by a Farkas vector y with y^T A <= 0 and
// y^T b > 0.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

namespace cnc {

using Rational = boost::multiprecision::cpp_rational;

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct LpOutcome {
  LpStatus status = LpStatus::IterationLimit;
  std::vector<T> x;
  T objective{};
  std::vector<T> farkas;  // set when infeasible
};

template <class T>
struct LpTraits;

template <>
struct LpTraits<double> {
  static constexpr double pivot_eps = 1e-9;
  static constexpr double feas_eps = 1e-7;
  static bool is_zero(double v, double eps) { return v > -eps && v < eps; }
};

template <>
struct LpTraits<Rational> {
  static inline const Rational pivot_eps{0};
  static inline const Rational feas_eps{0};
  static bool is_zero(const Rational& v, const Rational&) { return v == 0; }
};

template <class T>
LpOutcome<T> solve_lp(std::vector<std::vector<T>> a, std::vector<T> b,
                      const std::vector<T>& c, std::size_t max_iters = 200000);

extern template LpOutcome<double> solve_lp<double>(
    std::vector<std::vector<double>>, std::vector<double>,
    const std::vector<double>&, std::size_t);
extern template LpOutcome<Rational> solve_lp<Rational>(
    std::vector<std::vector<Rational>>, std::vector<Rational>,
    const std::vector<Rational>&, std::size_t);

// --- implementation --------------------------------------------------------

namespace detail {

template <class T>
class SimplexTableau {
 public:
  SimplexTableau(std::vector<std::vector<T>> a, std::vector<T> b)
      : m_(a.size()), nvars_(a.empty() ? 0 : a[0].size()), rows_(std::move(a)),
        row_sign_(m_, 1) {
    // append artificial columns and rhs; flip rows so rhs >= 0
    for (std::size_t i = 0; i < m_; ++i) {
      if (b[i] < T(0)) {
        row_sign_[i] = -1;
        for (auto& v : rows_[i]) v = -v;
        b[i] = -b[i];
      }
      rows_[i].resize(nvars_ + m_ + 1, T(0));
      rows_[i][nvars_ + i] = T(1);
      rows_[i][nvars_ + m_] = b[i];
      basis_.push_back(nvars_ + i);
    }
    obj_.assign(nvars_ + m_ + 1, T(0));
  }

  std::size_t total_cols() const { return nvars_ + m_; }
  const T& rhs(std::size_t i) const { return rows_[i][nvars_ + m_]; }
  T objective_value() const { return -obj_[nvars_ + m_]; }

  // objective row for min sum(artificials)
  void load_phase1_objective() {
    std::fill(obj_.begin(), obj_.end(), T(0));
    for (std::size_t j = 0; j < nvars_ + m_; ++j) {
      T acc{0};
      for (std::size_t i = 0; i < m_; ++i) acc += rows_[i][j];
      // cost 1 on artificials, 0 elsewhere; basis is all-artificial
      T cost = j >= nvars_ ? T(1) : T(0);
      obj_[j] = cost - acc;
    }
    T rhs_acc{0};
    for (std::size_t i = 0; i < m_; ++i) rhs_acc += rhs(i);
    obj_[nvars_ + m_] = -rhs_acc;
  }

  void load_objective(const std::vector<T>& c) {
    std::fill(obj_.begin(), obj_.end(), T(0));
    for (std::size_t j = 0; j < nvars_; ++j) obj_[j] = c[j];
    // reduce by current basis
    for (std::size_t i = 0; i < m_; ++i) {
      T cb = basis_[i] < nvars_ ? c[basis_[i]] : T(0);
      if (LpTraits<T>::is_zero(cb, LpTraits<T>::pivot_eps)) continue;
      for (std::size_t j = 0; j <= nvars_ + m_; ++j) obj_[j] -= cb * rows_[i][j];
    }
  }

  // returns Optimal / Unbounded / IterationLimit
  LpStatus iterate(bool allow_artificials, std::size_t max_iters) {
    const auto eps = LpTraits<T>::pivot_eps;
    std::size_t limit = allow_artificials ? nvars_ + m_ : nvars_;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
      bool bland = iter > max_iters / 2;
      std::size_t enter = limit;
      T best{0};
      for (std::size_t j = 0; j < limit; ++j) {
        if (obj_[j] < -eps && (enter == limit || (!bland && obj_[j] < best))) {
          enter = j;
          best = obj_[j];
          if (bland) break;
        }
      }
      if (enter == limit) return LpStatus::Optimal;
      std::size_t leave = m_;
      T best_ratio{0};
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= eps) continue;
        T ratio = rhs(i) / rows_[i][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
    return LpStatus::IterationLimit;
  }

  void pivot(std::size_t row, std::size_t col) {
    T p = rows_[row][col];
    for (auto& v : rows_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      T f = rows_[i][col];
      if (LpTraits<T>::is_zero(f, LpTraits<T>::pivot_eps)) continue;
      for (std::size_t j = 0; j <= nvars_ + m_; ++j)
        rows_[i][j] -= f * rows_[row][j];
    }
    T f = obj_[col];
    if (!LpTraits<T>::is_zero(f, LpTraits<T>::pivot_eps))
      for (std::size_t j = 0; j <= nvars_ + m_; ++j)
        obj_[j] -= f * rows_[row][j];
    basis_[row] = col;
  }

  // pivot basic artificials onto structural columns where possible
  void drive_out_artificials() {
    const auto eps = LpTraits<T>::pivot_eps;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < nvars_) continue;
      for (std::size_t j = 0; j < nvars_; ++j) {
        if (!(rows_[i][j] <= eps) || !(rows_[i][j] >= -eps)) {  // nonzero
          pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<T> solution() const {
    std::vector<T> x(nvars_, T(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < nvars_) x[basis_[i]] = rhs(i);
    return x;
  }

  // Farkas vector from the optimal phase-1 objective row, mapped back to
  // the original row orientation: y_i = (1 - redcost(artificial_i)) * sign_i.
  std::vector<T> farkas() const {
    std::vector<T> y(m_);
    for (std::size_t i = 0; i < m_; ++i)
      y[i] = (T(1) - obj_[nvars_ + i]) * T(row_sign_[i]);
    return y;
  }

 private:
  std::size_t m_, nvars_;
  std::vector<std::vector<T>> rows_;
  std::vector<T> obj_;
  std::vector<std::size_t> basis_;
  std::vector<int> row_sign_;
};

}  // namespace detail

template <class T>
LpOutcome<T> solve_lp(std::vector<std::vector<T>> a, std::vector<T> b,
                      const std::vector<T>& c, std::size_t max_iters) {
  LpOutcome<T> out;
  detail::SimplexTableau<T> tab(std::move(a), std::move(b));
  tab.load_phase1_objective();
  LpStatus st = tab.iterate(true, max_iters);
  if (st != LpStatus::Optimal) {
    out.status = st;
    return out;
  }
  if (tab.objective_value() > LpTraits<T>::feas_eps) {
    out.status = LpStatus::Infeasible;
    out.farkas = tab.farkas();
    return out;
  }
  tab.drive_out_artificials();
  tab.load_objective(c);
  st = tab.iterate(false, max_iters);
  out.status = st;
  if (st != LpStatus::Optimal) return out;
  out.x = tab.solution();
  out.objective = T(0);
  for (std::size_t j = 0; j < c.size(); ++j) out.objective += c[j] * out.x[j];
  return out;
}

}  // namespace cnc
