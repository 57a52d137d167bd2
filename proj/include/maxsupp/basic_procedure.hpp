#pragma once

// Smooth perceptron basic procedure.
//
// Given the orthogonal projection P onto a subspace of R^J, find either
//   u in Δ(J) with (Pu)_J > 0                       (positive certificate), or
//   z in Δ(J) with ||(Pz)^+||_1 <= ||z||_inf / 2    (rescaling certificate).
//
// The iterates satisfy
//   ½||P z_k||² + ½||P u_k||² − min_j (P u_k)_j  <=  μ_k  <=  8/(k+1)²,
// so one of the two exits fires once μ_k <= 1/(8|J|³).

#include <cmath>
#include <string>
#include <variant>

#include "maxsupp/linalg.hpp"

namespace maxsupp {

/// Slack on the rescaling test, absorbing roundoff in ||(Pz)^+||_1.
inline constexpr double kRescaleSlack = 1e-12;

/// Entries of Pu at or below this count as zero. u lies in the simplex and P
/// is a projection, so |Pu| <= 1 and anything smaller is roundoff.
inline constexpr double kPositiveFloor = 1e-12;

/// Orthogonal projection onto a subspace of R^J, applied in J-coordinates.
class Projector {
 public:
  Projector() = default;

  /// `M` must already lie in R^J (hard zeros off J), e.g. the output of
  /// restrict_to_coordinates().
  Projector(const Subspace& M, IndexSet J) : coords_(std::move(J)) {
    if (coords_.ambient_dim() != M.ambient_dim()) {
      throw DimensionMismatch("Projector: index set lives in a different space");
    }
    if (coords_.empty()) throw InvalidArgument("Projector: empty index set");
    basis_.resize(coords_.size(), M.dim());
    for (Index p = 0; p < coords_.size(); ++p) basis_.row(p) = M.basis().row(coords_[p]);
  }

  /// Projection onto range(basis) inside R^m, J = {0..m-1}. Columns must be
  /// orthonormal.
  static Projector from_basis(const Matrix& orthonormal_basis) {
    Subspace M(orthonormal_basis);
    return Projector(M, IndexSet::full(M.ambient_dim()));
  }

  static Projector identity(Index m) { return from_basis(Matrix::Identity(m, m)); }
  static Projector zero(Index m) { return from_basis(Matrix(m, 0)); }

  const IndexSet& coordinates() const noexcept { return coords_; }
  Index size() const noexcept { return coords_.size(); }
  Index rank() const noexcept { return basis_.cols(); }

  /// P v for v given in J-coordinates.
  Vector apply(const Vector& v) const {
    if (v.size() != size()) throw DimensionMismatch("Projector: vector length differs from |J|");
    if (rank() == 0) return Vector::Zero(size());
    return basis_ * (basis_.transpose() * v);
  }

 private:
  IndexSet coords_;
  Matrix basis_;  // |J| x d, orthonormal columns
};

/// argmin_{u in Δ} <u, v> + (μ/2)||u − anchor||² = Π_Δ(anchor − v/μ).
/// All vectors are in J-coordinates.
inline Vector smoothed_simplex_argmin(const Vector& v, double mu, const Vector& anchor) {
  if (!(mu > 0.0)) throw InvalidArgument("smoothed_simplex_argmin: mu must be positive");
  if (v.size() != anchor.size()) {
    throw DimensionMismatch("smoothed_simplex_argmin: vector and anchor lengths differ");
  }
  return project_to_simplex(anchor - v / mu);
}

inline SimplexPoint smoothed_simplex_argmin(const Vector& v, double mu, const SimplexPoint& anchor) {
  return SimplexPoint(anchor.support_set(), smoothed_simplex_argmin(v, mu, anchor.values()));
}

struct PositiveCertificate {
  SimplexPoint u;
  Vector image;  // P u, length n, hard zeros off J
};

struct RescaleCertificate {
  SimplexPoint z;
  Index pivot = -1;  // global index, argmax_j z_j (lowest on ties)
  Vector image;      // P z, length n, hard zeros off J
};

struct BasicProcedureOutcome {
  std::variant<PositiveCertificate, RescaleCertificate> result;
  Index iterations = 0;

  bool is_positive() const { return std::holds_alternative<PositiveCertificate>(result); }
  const PositiveCertificate& positive() const { return std::get<PositiveCertificate>(result); }
  const RescaleCertificate& rescale() const { return std::get<RescaleCertificate>(result); }
};

/// Snapshot handed to an observer at the top of every iteration, before the
/// termination tests. Vectors are in J-coordinates.
struct PerceptronIterate {
  Index k;
  double mu;
  const Vector& u;
  const Vector& z;
  const Vector& Pu;
  const Vector& Pz;
};

/// Guaranteed exit iteration: μ_k = 8/(k+1)² <= 1/(8m³) once k+1 >= 8 m^{1.5}.
inline Index perceptron_iteration_bound(Index m) {
  return static_cast<Index>(std::ceil(8.0 * std::pow(static_cast<double>(m), 1.5))) + 2;
}

struct NoObserver {
  void operator()(const PerceptronIterate&) const noexcept {}
};

namespace detail {

inline double positive_part_l1(const Vector& v) { return v.cwiseMax(0.0).sum(); }

inline Index argmax_lowest(const Vector& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(best)) best = i;
  }
  return best;
}

inline Vector renormalized(const Vector& w) { return w / w.sum(); }

}  // namespace detail

template <class Observer = NoObserver>
BasicProcedureOutcome smooth_perceptron(const Projector& P, Observer&& observe = {}) {
  const Index m = P.size();
  if (m == 0) throw InvalidArgument("smooth_perceptron: empty index set");
  const IndexSet& J = P.coordinates();
  const Index cap = 2 * perceptron_iteration_bound(m);

  const Vector anchor = Vector::Constant(m, 1.0 / static_cast<double>(m));
  Vector u = anchor;
  double mu = 2.0;
  Vector Pu = P.apply(u);
  Vector z = smoothed_simplex_argmin(Pu, mu, anchor);
  Vector Pz = P.apply(z);

  for (Index k = 0;; ++k) {
    observe(PerceptronIterate{k, mu, u, z, Pu, Pz});

    if ((Pu.array() > kPositiveFloor).all()) {
      u = detail::renormalized(u);
      Pu = P.apply(u);
      if ((Pu.array() > kPositiveFloor).all()) {
        return {PositiveCertificate{SimplexPoint(J, u), scatter(Pu, J)}, k};
      }
    }
    if (detail::positive_part_l1(Pz) <= 0.5 * z.maxCoeff() + kRescaleSlack) {
      z = detail::renormalized(z);
      Pz = P.apply(z);
      const Index pivot = J[detail::argmax_lowest(z)];
      return {RescaleCertificate{SimplexPoint(J, z), pivot, scatter(Pz, J)}, k};
    }
    if (k >= cap) {
      throw InternalError("smooth_perceptron: no exit after " + std::to_string(k) +
                          " iterations; projection is numerically broken");
    }

    const double theta = 2.0 / static_cast<double>(k + 3);
    const Vector u_next = (1.0 - theta) * (u + theta * z) +
                          theta * theta * smoothed_simplex_argmin(Pu, mu, anchor);
    mu *= (1.0 - theta);
    u = u_next;
    Pu = P.apply(u);
    z = (1.0 - theta) * z + theta * smoothed_simplex_argmin(Pu, mu, anchor);
    Pz = P.apply(z);
  }
}

}  // namespace maxsupp
