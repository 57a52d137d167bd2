#pragma once

// Ground-truth condition measures, computed by linear programming and small
// convex solves:
//
//   σ_i(L) = max{ x_i : x ∈ L ∩ R^n_+, ||x||_inf <= 1 }
//   J(L)   = { i : σ_i(L) > 0 },   σ(L) = min_{i ∈ J(L)} σ_i(L)  (1 if J(L) = ∅)
//   δ(L)   = max{ Π x_j : x ∈ L ∩ R^n_{++}, ||x||_inf <= 1 }
//   ρ(A)   = max_{||y||=1} min_i <a_i, y>
//
// These are oracles for testing and diagnostics, not part of the solve path.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "maxsupp/linalg.hpp"
#include "maxsupp/lp.hpp"

namespace maxsupp {

/// σ_i values at or below this are treated as zero when forming J(L).
inline constexpr double kSupportZeroTol = 1e-9;

struct CoordinateMaximum {
  double value = 0.0;  // σ_i(L)
  Vector argmax;       // a maximizer x ∈ L ∩ [0,1]^n
};

/// Solves max x_i s.t. x − B c = 0, 0 <= x <= 1, c free.
inline CoordinateMaximum coordinate_maximum(const Subspace& L, Index i) {
  const Index n = L.ambient_dim();
  const Index d = L.dim();
  if (i < 0 || i >= n) throw InvalidArgument("sigma_i: index out of range");
  if (d == 0) return {0.0, Vector::Zero(n)};

  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.objective = Vector::Zero(n + d);
  lp.objective(i) = 1.0;
  lp.equality.resize(n, n + d);
  lp.equality.leftCols(n) = Matrix::Identity(n, n);
  lp.equality.rightCols(d) = -L.basis();
  lp.rhs = Vector::Zero(n);
  lp.lower = Vector::Constant(n + d, -kInf);
  lp.upper = Vector::Constant(n + d, kInf);
  lp.lower.head(n).setZero();
  lp.upper.head(n).setOnes();

  const LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) {
    throw InternalError(std::string("sigma_i: LP returned ") + to_string(r.status));
  }
  // Report x = B c (exactly in L) clamped into the box.
  Vector x = (L.basis() * r.x.tail(d)).cwiseMax(0.0).cwiseMin(1.0);
  return {std::clamp(r.value, 0.0, 1.0), std::move(x)};
}

inline double sigma_i(const Subspace& L, Index i) { return coordinate_maximum(L, i).value; }

inline std::vector<double> sigma_per_index(const Subspace& L) {
  std::vector<double> out(static_cast<std::size_t>(L.ambient_dim()));
  for (Index i = 0; i < L.ambient_dim(); ++i) out[static_cast<std::size_t>(i)] = sigma_i(L, i);
  return out;
}

inline IndexSet support_from_sigmas(Index n, const std::vector<double>& sigmas) {
  std::vector<Index> members;
  for (Index i = 0; i < n; ++i) {
    if (sigmas[static_cast<std::size_t>(i)] > kSupportZeroTol) members.push_back(i);
  }
  return IndexSet(n, std::move(members));
}

inline double sigma_from_sigmas(const IndexSet& support, const std::vector<double>& sigmas) {
  if (support.empty()) return 1.0;
  double s = 1.0;
  for (Index i : support) s = std::min(s, sigmas[static_cast<std::size_t>(i)]);
  return s;
}

/// J_σ(L) = { i : σ_i(L) >= σ }.
inline IndexSet j_sigma(const Subspace& L, double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw InvalidArgument("j_sigma: sigma must lie in (0,1]");
  std::vector<Index> members;
  for (Index i = 0; i < L.ambient_dim(); ++i) {
    if (sigma_i(L, i) >= sigma - 1e-12) members.push_back(i);
  }
  return IndexSet(L.ambient_dim(), std::move(members));
}

// ---------------------------------------------------------------------------
// δ(L)
// ---------------------------------------------------------------------------

struct DeltaResult {
  double value = 0.0;
  Vector argmax;
  long iterations = 0;
};

/// δ(L) by a log-barrier path: maximize Σ log x_j + τ Σ log(1 − x_j) over
/// x = B c with damped Newton steps in c, driving τ down to 1e-12.
/// `interior` must satisfy 0 < x < 1 and lie in L.
inline DeltaResult delta_from_interior(const Subspace& L, const Vector& interior) {
  const Matrix& B = L.basis();
  Vector c = B.transpose() * interior;
  long iterations = 0;
  constexpr long kIterationCap = 10'000;

  auto barrier = [&](const Vector& x, double tau) {
    return x.array().log().sum() + tau * (1.0 - x.array()).log().sum();
  };
  auto strictly_inside = [](const Vector& x) { return (x.array() > 0.0).all() && (x.array() < 1.0).all(); };

  for (double tau = 1.0; tau >= 1e-12 && iterations < kIterationCap; tau *= 0.1) {
    for (int newton = 0; newton < 100 && iterations < kIterationCap; ++newton, ++iterations) {
      const Vector x = B * c;
      const Vector inv = x.cwiseInverse();
      const Vector inv_up = (Vector::Ones(x.size()) - x).cwiseInverse();
      const Vector grad = B.transpose() * (inv - tau * inv_up);
      const Vector curv = inv.cwiseProduct(inv) + tau * inv_up.cwiseProduct(inv_up);
      const Matrix H = B.transpose() * curv.asDiagonal() * B;
      const Vector step = H.ldlt().solve(grad);
      const double decrement = grad.dot(step);
      if (!(decrement > 1e-18)) break;

      const double f0 = barrier(x, tau);
      double t = 1.0;
      while (t > 1e-16) {
        const Vector trial = B * (c + t * step);
        if (strictly_inside(trial) && barrier(trial, tau) >= f0 + 0.25 * t * decrement) break;
        t *= 0.5;
      }
      if (t <= 1e-16) break;
      c += t * step;
      if (decrement < 1e-20) break;
    }
  }
  Vector x = B * c;
  return {x.array().log().sum() >= -700.0 ? std::exp(x.array().log().sum()) : 0.0, x, iterations};
}

// ---------------------------------------------------------------------------
// Condition report
// ---------------------------------------------------------------------------

struct ConditionReport {
  std::vector<double> sigma_per_index;
  double sigma = 1.0;
  IndexSet support;
  std::optional<double> delta;
  std::vector<std::string> notes;
};

inline ConditionReport condition_report(const Subspace& L, bool with_delta = false) {
  const Index n = L.ambient_dim();
  ConditionReport rep;
  std::vector<Vector> maximizers;
  rep.sigma_per_index.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    CoordinateMaximum cm = coordinate_maximum(L, i);
    rep.sigma_per_index[static_cast<std::size_t>(i)] = cm.value;
    maximizers.push_back(std::move(cm.argmax));
  }
  rep.support = support_from_sigmas(n, rep.sigma_per_index);
  rep.sigma = sigma_from_sigmas(rep.support, rep.sigma_per_index);

  if (with_delta) {
    if (!rep.support.is_full()) {
      rep.delta = 0.0;
      rep.notes.emplace_back("delta: the subspace does not meet the open orthant; reported as 0");
    } else {
      // Averaging the coordinate maximizers gives a point with every entry
      // >= σ_i/n; halving keeps it strictly below 1.
      Vector start = Vector::Zero(n);
      for (const auto& m : maximizers) start += m;
      start /= 2.0 * static_cast<double>(n);
      start = L.project(start);
      rep.delta = delta_from_interior(L, start).value;
    }
  }
  return rep;
}

inline double delta(const Subspace& L) { return *condition_report(L, true).delta; }

// ---------------------------------------------------------------------------
// ρ(A)
// ---------------------------------------------------------------------------

enum class RhoMethod { FrankWolfe, FacetEnumeration };

struct RhoResult {
  double value = 0.0;
  int sign = 0;  // +1, -1, or 0 when the origin sits on the hull boundary
  RhoMethod method = RhoMethod::FrankWolfe;
  long iterations = 0;
};

inline const char* to_string(RhoMethod m) {
  return m == RhoMethod::FrankWolfe ? "frank-wolfe" : "facet-enumeration";
}

/// True when 0 ∈ conv{a_1, ..., a_n}: feasibility of A λ = 0, Σλ = 1, λ >= 0.
inline bool origin_in_hull(const Matrix& A) {
  const Index m = A.rows();
  const Index n = A.cols();
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  lp.objective = Vector::Zero(n);
  lp.equality.resize(m + 1, n);
  lp.equality.topRows(m) = A;
  lp.equality.row(m).setOnes();
  lp.rhs = Vector::Zero(m + 1);
  lp.rhs(m) = 1.0;
  lp.lower = Vector::Zero(n);
  lp.upper = Vector::Constant(n, kInf);
  return lp_solve(lp).status == LpStatus::Optimal;
}

struct MinNormPoint {
  Vector weights;  // λ ∈ Δ
  double norm = 0.0;
  double gap = 0.0;
  long iterations = 0;
};

/// min_{λ ∈ Δ} ||A λ|| by away-step Frank–Wolfe with exact line search on
/// f(λ) = ½||Aλ||², stopped at Frank–Wolfe gap <= gap_tol.
inline MinNormPoint min_norm_in_hull(const Matrix& A, double gap_tol = 1e-10, long max_iter = 1'000'000) {
  const Index n = A.cols();
  const Matrix G = A.transpose() * A;
  // Start at the shortest column.
  Index start = 0;
  for (Index j = 1; j < n; ++j) {
    if (G(j, j) < G(start, start)) start = j;
  }
  Vector lambda = Vector::Zero(n);
  lambda(start) = 1.0;
  Vector Glam = G.col(start);  // gradient A^T A λ

  MinNormPoint out;
  for (long it = 0; it < max_iter; ++it) {
    out.iterations = it;
    Index s = 0;
    for (Index j = 1; j < n; ++j) {
      if (Glam(j) < Glam(s)) s = j;
    }
    Index v = -1;
    for (Index j = 0; j < n; ++j) {
      if (lambda(j) > 0.0 && (v < 0 || Glam(j) > Glam(v))) v = j;
    }
    const double lg = lambda.dot(Glam);
    const double fw_gap = lg - Glam(s);
    out.gap = fw_gap;
    if (fw_gap <= gap_tol) break;
    const double away_gap = Glam(v) - lg;

    // Direction d = e_s − λ (toward) or λ − e_v (away).
    Vector d = -lambda;
    double max_step = 1.0;
    if (fw_gap >= away_gap) {
      d(s) += 1.0;
    } else {
      d = lambda;
      d(v) -= 1.0;
      max_step = lambda(v) / (1.0 - lambda(v));
      if (!std::isfinite(max_step)) max_step = 1e300;
    }
    const double slope = d.dot(Glam);
    const double curvature = d.dot(G * d);
    double step = curvature > 0.0 ? std::min(max_step, -slope / curvature) : max_step;
    if (!(step > 0.0)) break;
    lambda += step * d;
    lambda = lambda.cwiseMax(0.0);
    lambda /= lambda.sum();
    if (step == max_step && fw_gap < away_gap) lambda(v) = 0.0;
    Glam = G * lambda;
  }
  out.weights = lambda;
  out.norm = (A * lambda).norm();
  return out;
}

namespace detail {

// Distance from the origin to the boundary of conv{columns} when the origin
// is inside, by enumerating supporting hyperplanes through m columns.
inline double interior_boundary_distance(const Matrix& A) {
  const Index m = A.rows();
  const Index n = A.cols();
  constexpr double kSideTol = 1e-12;
  double best = kInf;

  std::vector<Index> pick(static_cast<std::size_t>(m));
  for (Index k = 0; k < m; ++k) pick[static_cast<std::size_t>(k)] = k;
  if (m > n) throw UnsupportedScale("rho: fewer columns than rows");

  for (;;) {
    // Hyperplane normal: kernel of the (m-1) x m matrix of differences.
    Matrix diffs(m - 1, m);
    for (Index k = 1; k < m; ++k) {
      diffs.row(k - 1) = (A.col(pick[static_cast<std::size_t>(k)]) - A.col(pick[0])).transpose();
    }
    Vector normal;
    if (m == 1) {
      normal = Vector::Ones(1);
    } else {
      Eigen::FullPivLU<Matrix> lu(diffs);
      lu.setThreshold(1e-10);
      const Matrix ker = lu.kernel();
      if (ker.cols() == 1) normal = ker.col(0).normalized();
    }
    if (normal.size() == m) {
      const double offset = normal.dot(A.col(pick[0]));
      const Vector side = A.transpose() * normal - Vector::Constant(n, offset);
      const bool below = (side.array() <= kSideTol).all();
      const bool above = (side.array() >= -kSideTol).all();
      if (below || above) best = std::min(best, std::abs(offset));
    }
    // Next m-subset in lexicographic order.
    Index k = m - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == n - m + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (Index r = k + 1; r < m; ++r) {
      pick[static_cast<std::size_t>(r)] = pick[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
  return best;
}

}  // namespace detail

/// ρ(A) for a matrix with unit columns. Positive values come from the
/// min-norm point of the column hull; negative values from facet
/// enumeration, supported for m <= 3.
inline RhoResult rho(const Matrix& A) {
  require_finite(A, "rho");
  if (A.rows() < 1 || A.cols() < 1) throw InvalidArgument("rho: empty matrix");
  for (Index j = 0; j < A.cols(); ++j) {
    if (std::abs(A.col(j).norm() - 1.0) > 1e-10) {
      throw InvalidArgument("rho: column " + std::to_string(j + 1) + " is not a unit vector");
    }
  }

  RhoResult out;
  if (!origin_in_hull(A)) {
    const MinNormPoint mnp = min_norm_in_hull(A);
    out.value = mnp.norm;
    out.sign = 1;
    out.method = RhoMethod::FrankWolfe;
    out.iterations = mnp.iterations;
    return out;
  }
  if (A.rows() > 3) throw UnsupportedScale("rho: negative rho with m > 3 is not supported");
  const double dist = detail::interior_boundary_distance(A);
  out.method = RhoMethod::FacetEnumeration;
  if (!std::isfinite(dist) || dist <= 1e-12) {
    out.value = 0.0;
    out.sign = 0;
  } else {
    out.value = -dist;
    out.sign = -1;
  }
  return out;
}

}  // namespace maxsupp
