#pragma once

// Independent reference computations for the tests. Nothing here calls the
// solver or the LP code.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "maxsupp/linalg.hpp"

namespace oracle {

using maxsupp::Index;
using maxsupp::Matrix;
using maxsupp::Vector;

inline Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

inline Vector gaussian(Index n, std::mt19937_64& rng) { return gaussian(n, 1, rng).col(0); }

/// Random subspace of R^n of dimension d (Gaussian spanning set).
inline maxsupp::Subspace random_subspace(Index n, Index d, std::mt19937_64& rng) {
  if (d == 0) return maxsupp::Subspace::zero(n);
  return maxsupp::orthonormalize(gaussian(n, d, rng));
}

/// max x_i over {x = B c : 0 <= x <= 1} by enumerating every vertex of the
/// polytope in c-space. Each vertex makes d of the 2n box constraints tight.
/// Only for tiny n.
inline double vertex_sigma_i(const Matrix& B, Index i) {
  const Index n = B.rows();
  const Index d = B.cols();
  if (d == 0) return 0.0;
  double best = 0.0;  // c = 0 is feasible
  std::vector<int> pick(static_cast<std::size_t>(2 * n), 0);
  std::fill(pick.end() - d, pick.end(), 1);
  do {
    Matrix A(d, d);
    Vector b(d);
    Index r = 0;
    for (Index k = 0; k < 2 * n; ++k) {
      if (!pick[static_cast<std::size_t>(k)]) continue;
      A.row(r) = B.row(k % n);
      b(r) = k < n ? 0.0 : 1.0;
      ++r;
    }
    Eigen::FullPivLU<Matrix> lu(A);
    if (lu.rank() < d) continue;
    const Vector c = lu.solve(b);
    const Vector x = B * c;
    if ((x.array() >= -1e-12).all() && (x.array() <= 1.0 + 1e-12).all()) best = std::max(best, x(i));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

/// argmin over the 1-simplex {(t, 1-t)} of ||u - v|| by scanning t on a grid.
inline Vector grid_simplex_projection_2d(const Vector& v, double step = 1e-6) {
  double best_t = 0.0, best = INFINITY;
  const long steps = std::lround(1.0 / step);
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * step;
    const double f = (t - v(0)) * (t - v(0)) + (1.0 - t - v(1)) * (1.0 - t - v(1));
    if (f < best) {
      best = f;
      best_t = t;
    }
  }
  Vector u(2);
  u << best_t, 1.0 - best_t;
  return u;
}

/// Uniform random point of the simplex in R^m (normalized exponentials).
inline Vector random_simplex_point(Index m, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  Vector u(m);
  for (Index i = 0; i < m; ++i) u(i) = e(rng);
  return u / u.sum();
}

}  // namespace oracle
