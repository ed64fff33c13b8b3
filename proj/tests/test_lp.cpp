#include <gtest/gtest.h>

#include "ncfeyn/exact/lp.hpp"

using namespace ncfeyn;

namespace {

LinearRow row(std::vector<Rational> a, Rational b) { return {std::move(a), std::move(b)}; }

// Strong duality: y >= 0, y^T A + mu^T E = c and y^T b + mu^T e = optimum.
bool dual_certifies(const LinearProgram& lp, const LPResult& r) {
  if (r.dual_le.size() != lp.le.size() || r.dual_eq.size() != lp.eq.size()) return false;
  std::vector<Rational> combo(lp.nvars, Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < lp.le.size(); ++i) {
    if (sgn(r.dual_le[i]) < 0) return false;
    for (int j = 0; j < lp.nvars; ++j) combo[j] += r.dual_le[i] * lp.le[i].a[j];
    rhs += r.dual_le[i] * lp.le[i].b;
  }
  for (std::size_t i = 0; i < lp.eq.size(); ++i) {
    for (int j = 0; j < lp.nvars; ++j) combo[j] += r.dual_eq[i] * lp.eq[i].a[j];
    rhs += r.dual_eq[i] * lp.eq[i].b;
  }
  return combo == lp.objective && rhs == r.value;
}

}  // namespace

TEST(LinearProgram, TextbookOptimum) {
  // max 3x + 2y  s.t. x + y <= 4, x + 3y <= 6, x <= 3, x, y >= 0  ->  (3, 1), value 11.
  LinearProgram lp;
  lp.nvars = 2;
  lp.objective = {3, 2};
  lp.le = {row({1, 1}, 4), row({1, 3}, 6), row({1, 0}, 3), row({-1, 0}, 0), row({0, -1}, 0)};
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LPResult::Status::Optimal);
  EXPECT_EQ(r.value, 11);
  EXPECT_EQ(r.z[0], 3);
  EXPECT_EQ(r.z[1], 1);
  EXPECT_TRUE(dual_certifies(lp, r));
}

TEST(LinearProgram, FreeVariablesAndEquality) {
  // max -x - y  s.t. x + y == -5/2, x >= -2, y >= -2  ->  value 5/2.
  LinearProgram lp;
  lp.nvars = 2;
  lp.objective = {-1, -1};
  lp.le = {row({-1, 0}, 2), row({0, -1}, 2)};
  lp.eq = {row({1, 1}, frac(-5, 2))};
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LPResult::Status::Optimal);
  EXPECT_EQ(r.value, frac(5, 2));
  EXPECT_EQ(r.z[0] + r.z[1], frac(-5, 2));
  EXPECT_TRUE(dual_certifies(lp, r));
}

TEST(LinearProgram, Infeasible) {
  // x <= 1 and x >= 2.
  LinearProgram lp;
  lp.nvars = 1;
  lp.objective = {1};
  lp.le = {row({1}, 1), row({-1}, -2)};
  auto r = solve_lp(lp);
  EXPECT_EQ(r.status, LPResult::Status::Infeasible);
}

TEST(LinearProgram, InfeasibleEquality) {
  // x + y == 3 with x <= 1, y <= 1.
  LinearProgram lp;
  lp.nvars = 2;
  lp.objective = {0, 0};
  lp.le = {row({1, 0}, 1), row({0, 1}, 1)};
  lp.eq = {row({1, 1}, 3)};
  auto r = solve_lp(lp);
  EXPECT_EQ(r.status, LPResult::Status::Infeasible);
}

TEST(LinearProgram, Unbounded) {
  LinearProgram lp;
  lp.nvars = 1;
  lp.objective = {1};
  lp.le = {row({-1}, 0)};
  EXPECT_EQ(solve_lp(lp).status, LPResult::Status::Unbounded);
}

TEST(LinearProgram, DegenerateVertexTerminates) {
  // Several constraints through the optimum (0, 0).
  LinearProgram lp;
  lp.nvars = 2;
  lp.objective = {1, 1};
  lp.le = {row({1, 0}, 0), row({0, 1}, 0), row({1, 1}, 0), row({1, 2}, 0), row({2, 1}, 0)};
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LPResult::Status::Optimal);
  EXPECT_EQ(r.value, 0);
}
