#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nppe/types.hpp"

namespace nppe::datasets {

enum class Manifold { SwissRoll, SwissHole, Gaussian };

std::string_view to_string(Manifold name) noexcept;
Manifold parse_manifold(std::string_view text);

/// Swiss roll: t ~ U[3pi/2, 9pi/2], h ~ U[0, 21], x = (t cos t, h, t sin t).
inline constexpr double kRollHeight = 21.0;
/// Excluded parameter rectangle of the Swiss hole.
inline constexpr double kHoleTMin = 9.0;
inline constexpr double kHoleTMax = 12.0;
inline constexpr double kHoleHMin = 9.0;
inline constexpr double kHoleHMax = 14.0;
/// Gaussian bump: z ~ U[-1, 1]^2, height A exp(-|z|^2 / (2 sigma^2)).
inline constexpr double kBumpAmplitude = 1.0;
inline constexpr double kBumpSigma = 0.45;

struct SyntheticSample {
  DataMatrix ambient;          ///< 3 x N, x_i = phi(z_i)
  Eigen::MatrixXd generating;  ///< 2 x N
  Manifold name = Manifold::SwissRoll;
  std::uint64_t seed = 0;
};

SyntheticSample swiss_roll(Index n, std::uint64_t seed);
SyntheticSample swiss_hole(Index n, std::uint64_t seed);
SyntheticSample gaussian_bump(Index n, std::uint64_t seed);
SyntheticSample generate(Manifold name, Index n, std::uint64_t seed);

/// The analytic embedding phi of a generator, column by column.
Eigen::MatrixXd ambient_from_generating(Manifold name, const Eigen::MatrixXd& z);

bool in_hole(double t, double h) noexcept;

struct Split {
  std::vector<Index> train;
  std::vector<Index> test;
};

/// Seeded Fisher-Yates permutation of 0..n-1; the first n_train entries are the
/// training set, both lists sorted ascending.
Split train_test_split(Index n, Index n_train, std::uint64_t seed);

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, std::span<const Index> columns);

}  // namespace nppe::datasets
