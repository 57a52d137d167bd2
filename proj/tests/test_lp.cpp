#include <random>

#include <gtest/gtest.h>

#include "maxsupp/lp.hpp"

using namespace maxsupp;

namespace {

LinearProgram make(Sense sense, std::initializer_list<double> c, Matrix A, std::initializer_list<double> b,
                   std::initializer_list<double> lo, std::initializer_list<double> hi) {
  LinearProgram lp;
  lp.sense = sense;
  auto to_vec = [](std::initializer_list<double> xs) {
    Vector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
  };
  lp.objective = to_vec(c);
  lp.equality = std::move(A);
  lp.rhs = to_vec(b);
  lp.lower = to_vec(lo);
  lp.upper = to_vec(hi);
  return lp;
}

}  // namespace

TEST(LpSolve, UpperBoundOnly) {
  const auto r = lp_solve(make(Sense::Maximize, {1}, Matrix(0, 1), {}, {-kInf}, {1}));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
}

TEST(LpSolve, SimplexConstraint) {
  Matrix A(1, 2);
  A << 1, 1;
  const auto r = lp_solve(make(Sense::Maximize, {1, 1}, A, {1}, {0, 0}, {kInf, kInf}));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(LpSolve, InfeasibleBounds) {
  // x >= 2 and x <= 1, written as x - s = 2 with s >= 0 and x <= 1
  Matrix A(1, 2);
  A << 1, -1;
  const auto r = lp_solve(make(Sense::Maximize, {1, 0}, A, {2}, {-kInf, 0}, {1, kInf}));
  EXPECT_EQ(r.status, LpStatus::Infeasible);
  EXPECT_THROW(lp_solve(make(Sense::Maximize, {1}, Matrix(0, 1), {}, {2}, {1})), InvalidArgument);
}

TEST(LpSolve, Unbounded) {
  Matrix A(1, 2);
  A << 1, -1;
  const auto r = lp_solve(make(Sense::Maximize, {1, 0}, A, {0}, {0, 0}, {kInf, kInf}));
  EXPECT_EQ(r.status, LpStatus::Unbounded);
}

TEST(LpSolve, Minimize) {
  Matrix A(1, 3);
  A << 1, 2, 3;
  const auto r = lp_solve(make(Sense::Minimize, {3, 1, 4}, A, {6}, {0, 0, 0}, {kInf, kInf, kInf}));
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.value, 3.0, 1e-12);  // x2 = 3
  EXPECT_NEAR(r.x(1), 3.0, 1e-12);
}

TEST(LpSolve, ValidatesShapes) {
  LinearProgram lp = make(Sense::Maximize, {1, 1}, Matrix::Ones(1, 2), {1}, {0, 0}, {1, 1});
  lp.rhs.resize(2);
  EXPECT_THROW(lp_solve(lp), DimensionMismatch);
}

// Box-constrained random LPs against enumeration of the vertices of
// {x in [0,1]^3 : a.x = b}.
TEST(LpSolve, MatchesVertexEnumeration) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    Matrix A(1, 3);
    A << g(rng), g(rng), g(rng);
    const double b = 0.5 * (A.cwiseMax(0.0).sum() + A.cwiseMin(0.0).sum());
    Vector c(3);
    c << g(rng), g(rng), g(rng);
    LinearProgram lp;
    lp.objective = c;
    lp.equality = A;
    lp.rhs = Vector::Constant(1, b);
    lp.lower = Vector::Zero(3);
    lp.upper = Vector::Ones(3);
    const auto r = lp_solve(lp);
    ASSERT_EQ(r.status, LpStatus::Optimal);

    // vertices: two coordinates at a bound, the third solved from a.x = b
    double best = -INFINITY;
    for (int free = 0; free < 3; ++free) {
      for (int mask = 0; mask < 4; ++mask) {
        Vector x(3);
        int bit = 0;
        for (int j = 0; j < 3; ++j) {
          if (j == free) continue;
          x(j) = (mask >> bit++) & 1;
        }
        if (std::abs(A(0, free)) < 1e-12) continue;
        double rest = b;
        for (int j = 0; j < 3; ++j)
          if (j != free) rest -= A(0, j) * x(j);
        x(free) = rest / A(0, free);
        if (x(free) < -1e-12 || x(free) > 1 + 1e-12) continue;
        best = std::max(best, c.dot(x));
      }
    }
    EXPECT_NEAR(r.value, best, 1e-9);
    EXPECT_NEAR((A * r.x)(0), b, 1e-9);
  }
}
