#pragma once

// Dense linear algebra on subspaces of R^n.
//
// A subspace is always carried as an orthonormal basis (n x d). Projections,
// complements, coordinate restrictions and diagonal rescalings all return a
// fresh Subspace; nothing is updated in place.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "maxsupp/errors.hpp"

namespace maxsupp {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Column orthonormality tolerance accepted by Subspace.
inline constexpr double kOrthonormalityTol = 1e-10;
/// Default relative rank tolerance for orthonormalize().
inline constexpr double kRankTol = 1e-10;

inline void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

inline void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidArgument(std::string(what) + ": non-finite entry");
  }
}

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

/// Sorted subset of {0, ..., n-1}. Indices are zero-based in the API; the CLI
/// and file formats translate to one-based.
class IndexSet {
 public:
  IndexSet() = default;

  IndexSet(Index ambient_dim, std::vector<Index> members)
      : n_(ambient_dim), members_(std::move(members)) {
    if (n_ < 0) throw InvalidArgument("IndexSet: negative ambient dimension");
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw InvalidArgument("IndexSet: duplicate member");
    }
    if (!members_.empty() && (members_.front() < 0 || members_.back() >= n_)) {
      throw InvalidArgument("IndexSet: member out of range");
    }
  }

  IndexSet(Index ambient_dim, std::initializer_list<Index> members)
      : IndexSet(ambient_dim, std::vector<Index>(members)) {}

  static IndexSet full(Index n) {
    std::vector<Index> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), Index{0});
    return IndexSet(n, std::move(m));
  }

  static IndexSet none(Index n) { return IndexSet(n, std::vector<Index>{}); }

  Index ambient_dim() const noexcept { return n_; }
  Index size() const noexcept { return static_cast<Index>(members_.size()); }
  bool empty() const noexcept { return members_.empty(); }
  bool is_full() const noexcept { return size() == n_; }
  const std::vector<Index>& members() const noexcept { return members_; }
  Index operator[](Index pos) const { return members_[static_cast<std::size_t>(pos)]; }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  bool contains(Index i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  /// Position of member i within the set, or -1.
  Index position(Index i) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), i);
    if (it == members_.end() || *it != i) return -1;
    return static_cast<Index>(it - members_.begin());
  }

  IndexSet complement() const {
    std::vector<Index> out;
    for (Index i = 0; i < n_; ++i) {
      if (!contains(i)) out.push_back(i);
    }
    return IndexSet(n_, std::move(out));
  }

  IndexSet without(Index i) const {
    std::vector<Index> out;
    out.reserve(members_.size());
    for (Index m : members_) {
      if (m != i) out.push_back(m);
    }
    return IndexSet(n_, std::move(out));
  }

  IndexSet united(const IndexSet& other) const {
    check_same_space(other);
    std::vector<Index> out;
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return IndexSet(n_, std::move(out));
  }

  IndexSet intersected(const IndexSet& other) const {
    check_same_space(other);
    std::vector<Index> out;
    std::set_intersection(begin(), end(), other.begin(), other.end(),
                          std::back_inserter(out));
    return IndexSet(n_, std::move(out));
  }

  bool is_subset_of(const IndexSet& other) const {
    check_same_space(other);
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  /// Members translated to one-based indices.
  std::vector<Index> one_based() const {
    std::vector<Index> out(members_);
    for (auto& m : out) ++m;
    return out;
  }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  void check_same_space(const IndexSet& other) const {
    if (other.n_ != n_) throw DimensionMismatch("IndexSet: ambient dimensions differ");
  }

  Index n_ = 0;
  std::vector<Index> members_;
};

inline std::string to_string(const IndexSet& s) {
  std::string out = "{";
  bool first = true;
  for (Index m : s.one_based()) {
    if (!first) out += ",";
    out += std::to_string(m);
    first = false;
  }
  return out + "}";
}

/// Gathers the entries of v at the members of J.
inline Vector gather(const Vector& v, const IndexSet& J) {
  Vector out(J.size());
  for (Index p = 0; p < J.size(); ++p) out(p) = v(J[p]);
  return out;
}

/// Inverse of gather(): length-n vector with hard zeros outside J.
inline Vector scatter(const Vector& reduced, const IndexSet& J) {
  Vector out = Vector::Zero(J.ambient_dim());
  for (Index p = 0; p < J.size(); ++p) out(J[p]) = reduced(p);
  return out;
}

// ---------------------------------------------------------------------------
// SimplexPoint
// ---------------------------------------------------------------------------

/// A point of the standard simplex over the coordinates J. Values are stored
/// in J order; every coordinate outside J is zero.
class SimplexPoint {
 public:
  SimplexPoint() = default;

  SimplexPoint(IndexSet support, Vector values)
      : support_(std::move(support)), values_(std::move(values)) {
    if (support_.empty()) throw InvalidArgument("SimplexPoint: empty index set");
    if (values_.size() != support_.size()) {
      throw DimensionMismatch("SimplexPoint: value count differs from index set size");
    }
    require_finite(values_, "SimplexPoint");
    if ((values_.array() < 0.0).any()) {
      throw InvalidArgument("SimplexPoint: negative value");
    }
    if (std::abs(values_.sum() - 1.0) > 1e-12) {
      throw InvalidArgument("SimplexPoint: values do not sum to one");
    }
  }

  /// Uniform point (1/|J|, ..., 1/|J|).
  static SimplexPoint uniform(const IndexSet& J) {
    if (J.empty()) throw InvalidArgument("SimplexPoint: empty index set");
    return SimplexPoint(J, Vector::Constant(J.size(), 1.0 / static_cast<double>(J.size())));
  }

  const IndexSet& support_set() const noexcept { return support_; }
  const Vector& values() const noexcept { return values_; }
  Vector dense() const { return scatter(values_, support_); }
  double max_value() const { return values_.maxCoeff(); }

 private:
  IndexSet support_;
  Vector values_;
};

/// Euclidean projection of v onto the simplex {u >= 0, sum u = 1}.
///
/// Sort-and-threshold: with v sorted descending (ties by index), k is the
/// largest count with v_(k) - (sum_{j<=k} v_(j) - 1)/k > 0.
inline Vector project_to_simplex(const Vector& v) {
  const Index m = v.size();
  if (m == 0) throw InvalidArgument("project_to_simplex: empty vector");
  require_finite(v, "project_to_simplex");

  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return v(a) > v(b); });

  double prefix = 0.0;
  double tau = 0.0;
  for (Index k = 1; k <= m; ++k) {
    prefix += v(order[static_cast<std::size_t>(k - 1)]);
    const double t = (prefix - 1.0) / static_cast<double>(k);
    if (v(order[static_cast<std::size_t>(k - 1)]) - t > 0.0) tau = t;
  }

  Vector u = (v.array() - tau).max(0.0).matrix();
  const double total = u.sum();
  if (total > 0.0) u /= total;  // absorb rounding in the threshold
  return u;
}

inline SimplexPoint simplex_projection(const IndexSet& J, const Vector& v_on_J) {
  if (J.empty()) throw InvalidArgument("simplex_projection: empty index set");
  if (v_on_J.size() != J.size()) {
    throw DimensionMismatch("simplex_projection: vector length differs from |J|");
  }
  return SimplexPoint(J, project_to_simplex(v_on_J));
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

class Subspace {
 public:
  Subspace() = default;

  /// Wraps a basis that is already orthonormal (checked to 1e-10).
  explicit Subspace(Matrix orthonormal_basis) : basis_(std::move(orthonormal_basis)) {
    if (basis_.rows() < 1) throw InvalidArgument("Subspace: ambient dimension must be >= 1");
    require_finite(basis_, "Subspace");
    const Index d = basis_.cols();
    if (d > basis_.rows()) throw InvalidArgument("Subspace: more basis vectors than dimensions");
    if (d > 0) {
      const double err =
          (basis_.transpose() * basis_ - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
      if (err > kOrthonormalityTol) {
        throw InvalidArgument("Subspace: basis columns are not orthonormal");
      }
    }
  }

  static Subspace zero(Index n) { return Subspace(Matrix(n, 0)); }
  static Subspace whole(Index n) { return Subspace(Matrix::Identity(n, n)); }

  Index ambient_dim() const noexcept { return basis_.rows(); }
  Index dim() const noexcept { return basis_.cols(); }
  const Matrix& basis() const noexcept { return basis_; }

  /// P v = B (B^T v).
  Vector project(const Vector& v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("project: vector length differs from n");
    if (dim() == 0) return Vector::Zero(v.size());
    return basis_ * (basis_.transpose() * v);
  }

  /// Dense projection matrix B B^T.
  Matrix projection_matrix() const { return basis_ * basis_.transpose(); }

 private:
  Matrix basis_;
};

namespace detail {

// Orthonormal basis of range(m), dropping directions whose QR pivot is at
// or below abs_tol.
inline Matrix orthonormal_range(const Matrix& m, double abs_tol) {
  const Index n = m.rows();
  if (m.cols() == 0) return Matrix(n, 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  const auto& r = qr.matrixR();
  const Index kmax = std::min(m.rows(), m.cols());
  Index rank = 0;
  while (rank < kmax && std::abs(r(rank, rank)) > abs_tol) ++rank;
  Matrix q = qr.householderQ() * Matrix::Identity(n, rank);
  return q;
}

inline Matrix complement_basis(const Matrix& orthonormal) {
  const Index n = orthonormal.rows();
  const Index d = orthonormal.cols();
  if (d == 0) return Matrix::Identity(n, n);
  if (d == n) return Matrix(n, 0);
  Eigen::HouseholderQR<Matrix> qr(orthonormal);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - d);
}

}  // namespace detail

/// Orthonormal basis for the column span of `vectors`. A column is dropped
/// when its residual after orthogonalization is at most
/// rank_tol * (largest input column norm).
inline Subspace orthonormalize(const Matrix& vectors, double rank_tol = kRankTol) {
  if (vectors.rows() < 1) throw InvalidArgument("orthonormalize: need at least one row");
  if (!(rank_tol > 0.0)) throw InvalidArgument("orthonormalize: rank_tol must be positive");
  require_finite(vectors, "orthonormalize");
  if (vectors.cols() == 0) return Subspace::zero(vectors.rows());
  const double scale = vectors.colwise().norm().maxCoeff();
  if (scale == 0.0) return Subspace::zero(vectors.rows());
  return Subspace(detail::orthonormal_range(vectors, rank_tol * scale));
}

inline Subspace orthogonal_complement(const Subspace& L) {
  return Subspace(detail::complement_basis(L.basis()));
}

inline Vector project(const Subspace& L, const Vector& v) { return L.project(v); }

/// Rows of a restricted basis whose norm falls at or below this are written
/// as hard zeros: the coordinate vanishes identically on the subspace.
inline constexpr double kDeadRowTol = 1e-11;

/// Orthonormal basis of L ∩ R^J = {x in L : x_i = 0 for i not in J}.
/// Coordinates outside J are exact zeros in the returned basis.
inline Subspace restrict_to_coordinates(const Subspace& L, const IndexSet& J) {
  if (J.ambient_dim() != L.ambient_dim()) {
    throw DimensionMismatch("restrict_to_coordinates: index set lives in a different space");
  }
  if (J.empty()) throw InvalidArgument("restrict_to_coordinates: empty index set");
  const Index n = L.ambient_dim();
  if (J.is_full() || L.dim() == 0) return L;

  const Matrix& B = L.basis();
  const IndexSet out = J.complement();
  Matrix rows_out(out.size(), B.cols());
  for (Index p = 0; p < out.size(); ++p) rows_out.row(p) = B.row(out[p]);

  // ker(rows_out) = orthogonal complement of its row space, inside R^d.
  // B has orthonormal columns, so entries are O(1) and an absolute
  // tolerance is the right scale here.
  const Matrix row_space = detail::orthonormal_range(rows_out.transpose(), kRankTol);
  const Matrix kernel = detail::complement_basis(row_space);
  if (kernel.cols() == 0) return Subspace::zero(n);

  // Orthonormalize the J rows only and scatter back, so the rows outside J
  // stay exact zeros.
  const Matrix M = B * kernel;
  Matrix inside(J.size(), M.cols());
  for (Index p = 0; p < J.size(); ++p) {
    inside.row(p) = M.row(J[p]);
    if (inside.row(p).norm() <= kDeadRowTol) inside.row(p).setZero();
  }
  const Matrix q = detail::orthonormal_range(inside, kRankTol);
  Matrix full = Matrix::Zero(n, q.cols());
  for (Index p = 0; p < J.size(); ++p) full.row(J[p]) = q.row(p);
  return Subspace(std::move(full));
}

// ---------------------------------------------------------------------------
// Diagonal rescaling D = diag(2^{e_i})
// ---------------------------------------------------------------------------

/// Integer exponents of a diagonal scaling D with D_ii = 2^{e_i}, e_i >= 0.
class RescalingState {
 public:
  RescalingState() = default;
  explicit RescalingState(Index n) : exponents_(static_cast<std::size_t>(n), 0) {}
  explicit RescalingState(std::vector<int> exponents) : exponents_(std::move(exponents)) {
    for (int e : exponents_) {
      if (e < 0) throw InvalidArgument("RescalingState: negative exponent");
    }
  }

  Index ambient_dim() const noexcept { return static_cast<Index>(exponents_.size()); }
  int exponent(Index i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const noexcept { return exponents_; }

  /// D := (I + e_i e_i^T) D.
  void double_entry(Index i) { ++exponents_[static_cast<std::size_t>(i)]; }

  /// Sum of exponents, i.e. the number of doublings applied so far.
  long total() const { return std::accumulate(exponents_.begin(), exponents_.end(), 0L); }

  bool is_identity() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](int e) { return e == 0; });
  }

  double factor(Index i) const {
    const int e = exponent(i);
    if (e > std::numeric_limits<double>::max_exponent - 1) {
      throw ScalingOverflow("RescalingState: 2^e overflows double");
    }
    return std::ldexp(1.0, e);
  }

  friend bool operator==(const RescalingState&, const RescalingState&) = default;

 private:
  std::vector<int> exponents_;
};

/// Orthonormal basis of D L.
inline Subspace rescale(const Subspace& L, const RescalingState& D) {
  if (D.ambient_dim() != L.ambient_dim()) {
    throw DimensionMismatch("rescale: exponent vector length differs from n");
  }
  if (D.is_identity() || L.dim() == 0) return L;
  Matrix scaled = L.basis();
  for (Index i = 0; i < scaled.rows(); ++i) scaled.row(i) *= D.factor(i);
  // D is invertible, so the rank is exactly dim(L); no truncation.
  Eigen::HouseholderQR<Matrix> qr(scaled);
  Matrix q = qr.householderQ() * Matrix::Identity(scaled.rows(), scaled.cols());
  return Subspace(std::move(q));
}

/// Kernel {x : A x = 0} of an m x n matrix as a Subspace of R^n.
inline Subspace null_space(const Matrix& A, double rank_tol = kRankTol) {
  require_finite(A, "null_space");
  if (A.cols() < 1) throw InvalidArgument("null_space: matrix has no columns");
  if (A.rows() == 0) return Subspace::whole(A.cols());
  const double scale = A.rowwise().norm().maxCoeff();
  if (scale == 0.0) return Subspace::whole(A.cols());
  const Matrix row_space = detail::orthonormal_range(A.transpose(), rank_tol * scale);
  return Subspace(detail::complement_basis(row_space));
}

}  // namespace maxsupp
