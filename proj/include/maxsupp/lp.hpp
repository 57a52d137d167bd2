#pragma once

// Small dense linear programs:
//
//   optimize  c^T x   s.t.  A x = b,  lo <= x <= hi   (bounds may be ±inf)
//
// Two-phase primal simplex on the bounded-variable tableau with Bland's rule
// for both the entering and the leaving choice. Meant for a few dozen
// variables; everything is dense and deterministic.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "maxsupp/linalg.hpp"

namespace maxsupp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LinearProgram {
  Sense sense = Sense::Maximize;
  Vector objective;  // c, length N
  Matrix equality;   // A, m x N (m may be 0)
  Vector rhs;        // b, length m
  Vector lower;      // length N, may hold -inf
  Vector upper;      // length N, may hold +inf

  Index num_vars() const { return objective.size(); }

  void validate() const {
    const Index N = objective.size();
    if (equality.cols() != N && equality.rows() > 0) throw DimensionMismatch("LinearProgram: A has wrong column count");
    if (rhs.size() != equality.rows()) throw DimensionMismatch("LinearProgram: b length differs from row count");
    if (lower.size() != N || upper.size() != N) throw DimensionMismatch("LinearProgram: bound vectors have wrong length");
    require_finite(objective, "LinearProgram objective");
    require_finite(equality, "LinearProgram constraints");
    require_finite(rhs, "LinearProgram rhs");
    for (Index j = 0; j < N; ++j) {
      if (std::isnan(lower(j)) || std::isnan(upper(j))) throw InvalidArgument("LinearProgram: NaN bound");
      if (lower(j) > upper(j)) throw InvalidArgument("LinearProgram: lower bound exceeds upper bound");
      if (lower(j) == kInf || upper(j) == -kInf) throw InvalidArgument("LinearProgram: bound at the wrong infinity");
    }
  }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double value = 0.0;
  long iterations = 0;
};

namespace detail {

class BoundedSimplex {
 public:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-10;
  static constexpr double kFeasTol = 1e-9;
  static constexpr long kIterationCap = 1'000'000;

  explicit BoundedSimplex(const LinearProgram& lp) : lp_(lp) {
    m_ = lp.equality.rows();
    nx_ = lp.num_vars();
    total_ = nx_ + m_;
    lo_.resize(total_);
    hi_.resize(total_);
    x_.resize(total_);
    for (Index j = 0; j < nx_; ++j) {
      lo_(j) = lp.lower(j);
      hi_(j) = lp.upper(j);
      x_(j) = std::isfinite(lo_(j)) ? lo_(j) : (std::isfinite(hi_(j)) ? hi_(j) : 0.0);
    }
    // Artificial columns sign_k e_k absorb the initial residual.
    const Vector resid = m_ > 0 ? Vector(lp.rhs - lp.equality * x_.head(nx_)) : Vector(0);
    sign_.resize(m_);
    tableau_.setZero(m_, total_);
    basis_.resize(static_cast<std::size_t>(m_));
    is_basic_.assign(static_cast<std::size_t>(total_), false);
    for (Index k = 0; k < m_; ++k) {
      sign_(k) = resid(k) >= 0.0 ? 1.0 : -1.0;
      tableau_.row(k).head(nx_) = sign_(k) * lp.equality.row(k);
      tableau_(k, nx_ + k) = 1.0;
      lo_(nx_ + k) = 0.0;
      hi_(nx_ + k) = kInf;
      x_(nx_ + k) = std::abs(resid(k));
      basis_[static_cast<std::size_t>(k)] = nx_ + k;
      is_basic_[static_cast<std::size_t>(nx_ + k)] = true;
    }
  }

  LpResult solve() {
    LpResult result;
    // Phase 1: minimize the sum of artificials.
    Vector cost = Vector::Zero(total_);
    cost.tail(m_).setOnes();
    if (run(cost) != LpStatus::Optimal) throw InternalError("lp_solve: phase 1 reported unbounded");
    refresh_basic_values();
    const double infeas = x_.tail(m_).sum();
    const double scale = 1.0 + (m_ > 0 ? lp_.rhs.cwiseAbs().maxCoeff() : 0.0);
    result.iterations = iterations_;
    if (infeas > kFeasTol * scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Pin artificials at zero for phase 2.
    for (Index k = 0; k < m_; ++k) {
      hi_(nx_ + k) = 0.0;
      if (!is_basic_[static_cast<std::size_t>(nx_ + k)]) x_(nx_ + k) = 0.0;
    }

    cost.setZero();
    const double s = lp_.sense == Sense::Maximize ? -1.0 : 1.0;
    cost.head(nx_) = s * lp_.objective;
    const LpStatus status = run(cost);
    result.iterations = iterations_;
    if (status == LpStatus::Unbounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    refresh_basic_values();
    result.status = LpStatus::Optimal;
    result.x = x_.head(nx_);
    for (Index j = 0; j < nx_; ++j) {
      result.x(j) = std::min(std::max(result.x(j), lp_.lower(j)), lp_.upper(j));
    }
    result.value = lp_.objective.dot(result.x);
    return result;
  }

 private:
  LpStatus run(const Vector& cost) {
    for (;;) {
      if (++iterations_ > kIterationCap) throw InternalError("lp_solve: iteration cap exceeded");

      // Entering variable: lowest index with an improving direction.
      Index enter = -1;
      double dir = 0.0;
      for (Index j = 0; j < total_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)] || lo_(j) == hi_(j)) continue;
        double d = cost(j);
        for (Index i = 0; i < m_; ++i) d -= cost(basis_[static_cast<std::size_t>(i)]) * tableau_(i, j);
        if (d < -kCostTol && x_(j) < hi_(j)) {
          enter = j;
          dir = 1.0;
          break;
        }
        if (d > kCostTol && x_(j) > lo_(j)) {
          enter = j;
          dir = -1.0;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      // Ratio test; ties go to the lowest-index leaving variable.
      double step = hi_(enter) - lo_(enter);  // bound flip (inf when unbounded)
      Index leave_row = -1;
      double leave_value = 0.0;
      for (Index i = 0; i < m_; ++i) {
        const double a = tableau_(i, enter);
        if (std::abs(a) <= kPivotTol) continue;
        const Index b = basis_[static_cast<std::size_t>(i)];
        const double rate = -dir * a;  // d x_b / d step
        double limit = kInf;
        double target = 0.0;
        if (rate < 0.0 && std::isfinite(lo_(b))) {
          limit = std::max(0.0, (x_(b) - lo_(b)) / -rate);
          target = lo_(b);
        } else if (rate > 0.0 && std::isfinite(hi_(b))) {
          limit = std::max(0.0, (hi_(b) - x_(b)) / rate);
          target = hi_(b);
        }
        if (limit == kInf) continue;
        if (limit < step - 1e-12) {
          step = limit;
          leave_row = i;
          leave_value = target;
        } else if (limit <= step + 1e-12 && leave_row >= 0 &&
                   b < basis_[static_cast<std::size_t>(leave_row)]) {
          step = std::min(step, limit);
          leave_row = i;
          leave_value = target;
        }
      }
      if (step == kInf) return LpStatus::Unbounded;

      // Move.
      x_(enter) += dir * step;
      for (Index i = 0; i < m_; ++i) {
        x_(basis_[static_cast<std::size_t>(i)]) -= dir * step * tableau_(i, enter);
      }
      if (leave_row < 0) {
        x_(enter) = dir > 0 ? hi_(enter) : lo_(enter);
        continue;
      }
      const Index leaving = basis_[static_cast<std::size_t>(leave_row)];
      x_(leaving) = leave_value;
      pivot(leave_row, enter);
      is_basic_[static_cast<std::size_t>(leaving)] = false;
      is_basic_[static_cast<std::size_t>(enter)] = true;
      basis_[static_cast<std::size_t>(leave_row)] = enter;
      if (iterations_ % 64 == 0) refresh_basic_values();
    }
  }

  void pivot(Index r, Index c) {
    const double p = tableau_(r, c);
    tableau_.row(r) /= p;
    for (Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = tableau_(i, c);
      if (f != 0.0) tableau_.row(i) -= f * tableau_.row(r);
    }
  }

  // Recomputes basic values from the original data: x_B = B^{-1}(b − N x_N).
  void refresh_basic_values() {
    if (m_ == 0) return;
    Matrix Bm(m_, m_);
    Vector rhs = lp_.rhs;
    for (Index j = 0; j < total_; ++j) {
      if (is_basic_[static_cast<std::size_t>(j)]) continue;
      if (x_(j) == 0.0) continue;
      rhs -= column(j) * x_(j);
    }
    for (Index i = 0; i < m_; ++i) Bm.col(i) = column(basis_[static_cast<std::size_t>(i)]);
    const Vector xb = Bm.fullPivLu().solve(rhs);
    for (Index i = 0; i < m_; ++i) x_(basis_[static_cast<std::size_t>(i)]) = xb(i);
  }

  Vector column(Index j) const {
    if (j < nx_) return lp_.equality.col(j);
    Vector e = Vector::Zero(m_);
    e(j - nx_) = sign_(j - nx_);
    return e;
  }

  const LinearProgram& lp_;
  Index m_ = 0, nx_ = 0, total_ = 0;
  Matrix tableau_;
  Vector lo_, hi_, x_, sign_;
  std::vector<Index> basis_;
  std::vector<bool> is_basic_;
  long iterations_ = 0;
};

}  // namespace detail

inline LpResult lp_solve(const LinearProgram& lp) {
  lp.validate();
  return detail::BoundedSimplex(lp).solve();
}

}  // namespace maxsupp
