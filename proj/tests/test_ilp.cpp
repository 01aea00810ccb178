#include <gtest/gtest.h>

#include "runoff/runoff.hpp"

namespace runoff {
namespace {

// Exhaustive minimum of sum x <= limit subject to A x >= b.
std::optional<std::int64_t> brute(const std::vector<std::vector<double>>& A, const std::vector<double>& b, int cols,
                                  int limit) {
  std::optional<std::int64_t> best;
  std::vector<int> x(cols, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < A.size() && ok; ++i) {
      double s = 0;
      for (int j = 0; j < cols; ++j) s += A[i][j] * x[j];
      ok = s >= b[i] - 1e-9;
    }
    if (ok) {
      std::int64_t sum = 0;
      for (int v : x) sum += v;
      if (sum <= limit && (!best || sum < *best)) best = sum;
    }
    int j = 0;
    while (j < cols && ++x[j] > limit) x[j++] = 0;
    if (j == cols) break;
  }
  return best;
}

TEST(Ilp, Toy) {
  CoveringIlp ilp(2);
  ilp.add_row({1, 1}, 1.5);
  ilp.add_row({1, -1}, 0.5);
  const auto s = ilp.solve(10);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->objective, 2);
  EXPECT_TRUE(s->x[0] - s->x[1] >= 1);
}

TEST(Ilp, InfeasibleAndLimit) {
  CoveringIlp ilp(2);
  ilp.add_row({-1, -1}, 1);
  EXPECT_FALSE(ilp.solve(100));
  CoveringIlp big(1);
  big.add_row({1}, 5);
  EXPECT_FALSE(big.solve(4));
  EXPECT_EQ(big.solve(5)->objective, 5);
  EXPECT_THROW(big.add_row({1, 2}, 0), Error);
}

TEST(Ilp, MatchesExhaustiveSearch) {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int cols = 2 + rng.below_int(3), rows = 1 + rng.below_int(4);
    std::vector<std::vector<double>> A(rows, std::vector<double>(cols));
    std::vector<double> b(rows);
    CoveringIlp ilp(cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) A[i][j] = static_cast<double>(rng.below_int(7)) - 3;
      b[i] = static_cast<double>(rng.below_int(9)) - 3;
      ilp.add_row(A[i], b[i]);
    }
    const auto expect = brute(A, b, cols, 6);
    const auto got = ilp.solve(6);
    ASSERT_EQ(got.has_value(), expect.has_value()) << "trial " << trial;
    if (got) {
      EXPECT_EQ(got->objective, *expect) << "trial " << trial;
      for (int i = 0; i < rows; ++i) {
        double s = 0;
        for (int j = 0; j < cols; ++j) s += A[i][j] * static_cast<double>(got->x[j]);
        EXPECT_GE(s, b[i] - 1e-9);
      }
    }
  }
}

TEST(Ilp, NodeBudget) {
  CoveringIlp ilp(3);
  ilp.add_row({2, 2, 2}, 1);
  ilp.add_row({2, -2, 0}, 1);
  EXPECT_THROW(ilp.solve(50, 1), BudgetExceeded);
}

}  // namespace
}  // namespace runoff
