#pragma once

// Exact integer logarithms and the rescaling-count bounds they feed.

#include <cmath>
#include <span>

#include "maxsupp/errors.hpp"

namespace maxsupp {

/// ⌈log₂ x⌉ for finite x > 0, exact (no libm rounding).
inline long ceil_log2(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("ceil_log2: x must be positive and finite");
  int p = 0;
  const double m = std::frexp(x, &p);  // x = m 2^p, m in [0.5, 1)
  return m == 0.5 ? p - 1 : p;
}

/// ⌊log₂ x⌋ for finite x > 0, exact.
inline long floor_log2(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("floor_log2: x must be positive and finite");
  int p = 0;
  std::frexp(x, &p);
  return p - 1;
}

/// ⌈log₂(1/σ)⌉, computed from σ directly so that σ = 2^{-t} gives t exactly.
inline long ceil_log2_inv(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw InvalidArgument("ceil_log2_inv: sigma must be positive and finite");
  }
  int p = 0;
  std::frexp(sigma, &p);  // sigma = m 2^p, -log2(sigma) in (-p, 1-p]
  return 1 - p;
}

/// Rescaling budget of one partial-support run: n ⌈log₂(1/σ)⌉.
inline long partial_support_bound(long n, double sigma) { return n * ceil_log2_inv(sigma); }

/// Full-support bound: Σ_j ⌈log₂(1/σ_j)⌉ (every σ_j must be positive).
inline long full_support_bound(std::span<const double> sigma_per_index) {
  long total = 0;
  for (double s : sigma_per_index) {
    if (!(s > 0.0)) throw InvalidArgument("full_support_bound: sigma_j must be positive");
    total += s >= 1.0 ? 0 : ceil_log2_inv(s);
  }
  return total;
}

/// General maximum-support bound
///   n ⌈log₂(σ0/σ_min)⌉ (2⌈log₂(1/σ0)⌉ + ⌊log₂(σ0/σ_min)⌋).
/// The factors are evaluated exactly as written; for σ0 < σ_min the first
/// factor is negative and the expression carries no information.
inline long max_support_bound(long n, double sigma0, double sigma_min) {
  const double ratio = sigma0 / sigma_min;
  const long c0 = sigma0 >= 1.0 ? 0 : ceil_log2_inv(sigma0);
  return n * ceil_log2(ratio) * (2 * c0 + floor_log2(ratio));
}

/// Maximum-support bound when σ0 < σ_min: 2n ⌈log₂(1/σ0)⌉.
inline long max_support_lowball_bound(long n, double sigma0) {
  return 2 * n * (sigma0 >= 1.0 ? 0 : ceil_log2_inv(sigma0));
}

}  // namespace maxsupp
