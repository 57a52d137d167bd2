#pragma once

// Random subspaces with a planted maximum-support partition.
//
// Draw x* >= 0 supported exactly on J and s* >= 0 supported exactly on J^c,
// then take L = span({x*} ∪ V) with V orthogonal to s*. Then x* ∈ L and
// s* ∈ L^⊥, so J ⊆ J(L) and J^c ⊆ J(L^⊥); since J(L) and J(L^⊥) partition
// {1..n}, J(L) = J exactly.
//
// Edge cases: J = ∅ uses x* = 0 and L = span(V) ⊥ s* (d may be 0, giving
// L = {0}); J = {1..n} uses s* = 0 and V unconstrained (d = n gives R^n).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "maxsupp/linalg.hpp"
#include "maxsupp/rng.hpp"

namespace maxsupp {

inline constexpr double kDefaultInteriorScale = 0.1;

struct InstanceSpec {
  Index n = 0;
  IndexSet support;  // planted J
  Index dim = 1;     // requested dim(L); clamped into the feasible range
  std::uint64_t seed = 0;
  double interior_scale = kDefaultInteriorScale;
};

struct PlantedInstance {
  Subspace L;
  Vector planted_primal;  // x*, support exactly J
  Vector planted_dual;    // s*, support exactly J^c
  InstanceSpec spec;      // with dim replaced by the realized dimension
};

/// Feasible dimension range for a planted support of size k in R^n.
inline std::pair<Index, Index> feasible_dims(Index n, Index k) {
  if (k == 0) return {0, n - 1};
  if (k == n) return {1, n};
  return {1, n - 1};
}

inline PlantedInstance generate(const InstanceSpec& spec) {
  const Index n = spec.n;
  if (n < 1) throw InvalidArgument("generate: n must be >= 1");
  if (spec.support.ambient_dim() != n) throw DimensionMismatch("generate: support lives in a different space");
  if (!(spec.interior_scale > 0.0 && spec.interior_scale <= 1.0)) {
    throw InvalidArgument("generate: interior_scale must lie in (0,1]");
  }
  const IndexSet& J = spec.support;
  const auto [dmin, dmax] = feasible_dims(n, J.size());
  const Index d = std::clamp(spec.dim, dmin, dmax);

  Xoshiro256StarStar rng(spec.seed);
  Vector xs = Vector::Zero(n);
  Vector ss = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double v = rng.uniform(spec.interior_scale, 1.0);
    (J.contains(i) ? xs : ss)(i) = v;
  }

  const bool has_primal = !J.empty();
  const bool has_dual = !J.is_full();
  const Index extra = has_primal ? d - 1 : d;

  Subspace L = Subspace::zero(n);
  if (d == n) {
    L = Subspace::whole(n);
  } else if (d > 0) {
    const Vector sdir = has_dual ? Vector(ss.normalized()) : Vector::Zero(n);
    const Vector xdir = has_primal ? Vector(xs.normalized()) : Vector::Zero(n);
    for (int attempt = 0;; ++attempt) {
      if (attempt == 64) throw InternalError("generate: could not draw a generic basis");
      Matrix span(n, d);
      Index col = 0;
      if (has_primal) span.col(col++) = xs;
      for (Index k = 0; k < extra; ++k) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = rng.normal();
        v -= sdir.dot(v) * sdir;
        v -= xdir.dot(v) * xdir;
        span.col(col++) = v;
      }
      Subspace candidate = orthonormalize(span);
      if (candidate.dim() == d) {
        L = std::move(candidate);
        break;
      }
    }
  }

  InstanceSpec realized = spec;
  realized.dim = L.dim();
  return {std::move(L), std::move(xs), std::move(ss), std::move(realized)};
}

/// Planted instance with J = {1..n}, i.e. L ∩ R^n_{++} ≠ ∅.
inline PlantedInstance generate_full_support(Index n, Index dim, double interior_scale, std::uint64_t seed) {
  if (dim < 1 || dim > n) throw InvalidArgument("generate_full_support: need 1 <= d <= n");
  return generate({n, IndexSet::full(n), dim, seed, interior_scale});
}

/// Spec with a uniformly random support of the given size and a random
/// feasible dimension, both drawn from `seed`.
inline InstanceSpec sample_spec(Index n, Index support_size, std::uint64_t seed,
                                double interior_scale = kDefaultInteriorScale) {
  if (support_size < 0 || support_size > n) throw InvalidArgument("sample_spec: support size out of range");
  Xoshiro256StarStar rng(seed ^ 0x5bd1e9955bd1e995ULL);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  perm.resize(static_cast<std::size_t>(support_size));
  const auto [dmin, dmax] = feasible_dims(n, support_size);
  const Index d = dmin + static_cast<Index>(rng.below(static_cast<std::uint64_t>(dmax - dmin + 1)));
  return {n, IndexSet(n, std::move(perm)), d, seed, interior_scale};
}

}  // namespace maxsupp
