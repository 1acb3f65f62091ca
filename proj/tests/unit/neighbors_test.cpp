#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "nppe/neighbors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using nppe::ErrorCode;
using nppe::knn_graph;

TEST(KnnGraph, CollinearPoints) {
  Eigen::MatrixXd x(2, 3);
  x << 0, 1, 3, 0, 0, 0;
  const auto g = knn_graph(x, 1);
  EXPECT_EQ(g.neighbors(0)[0], 1);
  EXPECT_EQ(g.neighbors(1)[0], 0);
  EXPECT_EQ(g.neighbors(2)[0], 1);
  EXPECT_DOUBLE_EQ(g.distances(2)[0], 2.0);
}

TEST(KnnGraph, SquareCornersSkipDiagonal) {
  Eigen::MatrixXd x(2, 4);
  x << 0, 1, 1, 0, 0, 0, 1, 1;
  const auto g = knn_graph(x, 2);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (double d : g.distances(i)) EXPECT_DOUBLE_EQ(d, 1.0);
    for (auto j : g.neighbors(i)) EXPECT_NE((j + 2) % 4, i);
  }
  // ties ordered by index
  EXPECT_EQ(g.neighbors(0)[0], 1);
  EXPECT_EQ(g.neighbors(0)[1], 3);
}

TEST(KnnGraph, MatchesBruteForceOracle) {
  const Eigen::MatrixXd x = oracle::random_matrix(3, 50, 5);
  const auto g = knn_graph(x, 10);
  const auto expected = oracle::knn_bruteforce(x, 10);
  for (Eigen::Index i = 0; i < 50; ++i) {
    const auto got = g.neighbors(i);
    EXPECT_EQ(std::vector<Eigen::Index>(got.begin(), got.end()), expected[static_cast<std::size_t>(i)]);
  }
}

TEST(KnnGraph, DuplicatePointsExcludeSelf) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2, 4);
  x(0, 3) = 1.0;
  const auto g = knn_graph(x, 2);
  EXPECT_EQ(g.neighbors(0)[0], 1);
  EXPECT_EQ(g.neighbors(0)[1], 2);
  EXPECT_EQ(g.neighbors(1)[0], 0);
  EXPECT_EQ(g.neighbors(2)[0], 0);
  EXPECT_DOUBLE_EQ(g.distances(1)[0], 0.0);
}

TEST(KnnGraph, ErrorPaths) {
  const Eigen::MatrixXd x = oracle::random_matrix(2, 5, 1);
  EXPECT_EQ(error_code_of([&] { knn_graph(x, 5); }), ErrorCode::KTooLarge);
  EXPECT_EQ(error_code_of([&] { knn_graph(x, 0); }), ErrorCode::KTooLarge);
  EXPECT_EQ(error_code_of([&] { knn_graph(Eigen::MatrixXd(2, 0), 1); }), ErrorCode::EmptyInput);
  Eigen::MatrixXd bad = x;
  bad(1, 2) = std::numeric_limits<double>::infinity();
  EXPECT_EQ(error_code_of([&] { knn_graph(bad, 2); }), ErrorCode::NonFiniteData);
}

TEST(KnnGraphProperty, ExactnessAndOrdering) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Eigen::Index n = 10 + static_cast<Eigen::Index>(seed * 3);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(seed % 7);
    const Eigen::MatrixXd x = oracle::random_matrix(1 + static_cast<Eigen::Index>(seed % 4), n, seed);
    const auto g = knn_graph(x, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto nb = g.neighbors(i);
      const auto ds = g.distances(i);
      ASSERT_EQ(static_cast<Eigen::Index>(nb.size()), k);
      for (std::size_t r = 1; r < ds.size(); ++r) EXPECT_LE(ds[r - 1], ds[r]);
      std::vector<bool> listed(static_cast<std::size_t>(n), false);
      for (auto j : nb) {
        EXPECT_NE(j, i);
        listed[static_cast<std::size_t>(j)] = true;
      }
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i || listed[static_cast<std::size_t>(j)]) continue;
        EXPECT_LE(ds.back(), (x.col(i) - x.col(j)).norm());
      }
    }
  }
}

TEST(KnnGraphProperty, PermutationEquivariance) {
  const Eigen::MatrixXd x = oracle::random_matrix(3, 40, 77);
  std::vector<Eigen::Index> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  Eigen::MatrixXd xp(3, 40);
  for (Eigen::Index i = 0; i < 40; ++i) xp.col(i) = x.col(perm[static_cast<std::size_t>(i)]);
  const auto g = knn_graph(x, 6);
  const auto gp = knn_graph(xp, 6);
  for (Eigen::Index i = 0; i < 40; ++i) {
    const auto orig = g.neighbors(perm[static_cast<std::size_t>(i)]);
    const auto relabeled = gp.neighbors(i);
    for (std::size_t r = 0; r < 6; ++r) {
      EXPECT_EQ(perm[static_cast<std::size_t>(relabeled[r])], orig[r]);
    }
  }
  const auto again = knn_graph(x, 6);
  for (Eigen::Index i = 0; i < 40; ++i) {
    EXPECT_TRUE(std::equal(g.neighbors(i).begin(), g.neighbors(i).end(), again.neighbors(i).begin()));
  }
}
