#include <gtest/gtest.h>

#include "mvcomm/matrix_game.hpp"
#include "mvcomm/rng.hpp"
#include "support/oracles.hpp"

using namespace mvcomm;

namespace {

std::vector<std::vector<double>> random_matrix(Rng& rng, int rows, int cols) {
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
  for (auto& r : a)
    for (double& x : r) x = -2.0 + 4.0 * uniform01(rng);
  return a;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

TEST(MatrixGame, MatchingPennies) {
  const PayoffMatrix a({{1, -1}, {-1, 1}});
  const MatrixGameSolution lp = solve_zero_sum_lp(a);
  EXPECT_NEAR(lp.upper, 0.0, 1e-12);
  EXPECT_NEAR(lp.row_strategy[0], 0.5, 1e-12);
  const MatrixGameSolution fp = fictitious_play(a, 1e-6, 1'000'000);
  EXPECT_LE(fp.gap(), 1e-6);
  EXPECT_NEAR(fp.upper, 0.0, 1e-6);
}

TEST(MatrixGame, PureSaddlePoint) {
  const PayoffMatrix a({{3, 1}, {4, 2}});
  EXPECT_NEAR(solve_zero_sum_lp(a).upper, 3.0, 1e-12);
  const MatrixGameSolution fp = fictitious_play(a, 1e-9, 1000);
  EXPECT_NEAR(fp.upper, 3.0, 1e-12);
  EXPECT_LT(fp.iterations, 10);
}

TEST(MatrixGame, RockPaperScissors) {
  const PayoffMatrix a({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
  const MatrixGameSolution fp = fictitious_play(a, 1e-6, 10'000'000);
  EXPECT_NEAR(fp.upper, 0.0, 1e-6);
  EXPECT_NEAR(solve_zero_sum_lp(a).upper, 0.0, 1e-12);
}

TEST(MatrixGame, LpMatchesSupportEnumeration) {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const int r = 1 + static_cast<int>(uniform_below(rng, 6));
    const int c = 1 + static_cast<int>(uniform_below(rng, 6));
    const auto m = random_matrix(rng, r, c);
    const PayoffMatrix a(m);
    const MatrixGameSolution lp = solve_zero_sum_lp(a);
    const double v = oracle::matrix_game_value(m);
    EXPECT_NEAR(lp.upper, v, 1e-9);
    EXPECT_NEAR(lp.lower, v, 1e-9);
    EXPECT_NEAR(sum(lp.row_strategy), 1.0, 1e-9);
    EXPECT_NEAR(sum(lp.col_strategy), 1.0, 1e-9);
    EXPECT_NEAR(a.row_guarantee(lp.row_strategy), v, 1e-9);
    EXPECT_NEAR(a.col_guarantee(lp.col_strategy), v, 1e-9);
  }
}

TEST(MatrixGame, FictitiousPlayBracketsValue) {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_matrix(rng, 4, 5);
    const PayoffMatrix a(m);
    const MatrixGameSolution fp = fictitious_play(a, 1e-4, 100000);
    const double v = oracle::matrix_game_value(m);
    EXPECT_GE(fp.upper, v - 1e-12);
    EXPECT_LE(fp.lower, v + 1e-12);
    EXPECT_NEAR(a.row_guarantee(fp.row_strategy), fp.upper, 1e-9);
    EXPECT_NEAR(a.col_guarantee(fp.col_strategy), fp.lower, 1e-9);
    EXPECT_LE(fp.gap(), 1e-4);
  }
}

TEST(MatrixGame, RejectsRaggedInput) {
  EXPECT_THROW(PayoffMatrix({{1, 2}, {3}}), Error);
  EXPECT_THROW(PayoffMatrix(0, 3), Error);
}
