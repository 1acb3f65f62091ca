#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "nppe/types.hpp"

namespace nppe {

/// Kronecker lifting keeps every ordered monomial (x (x) x contains both ab and ba);
/// Hadamard lifting keeps only per-coordinate powers.
enum class LiftMode { Kronecker, Hadamard };

std::string_view to_string(LiftMode mode) noexcept;
LiftMode parse_lift_mode(std::string_view text);

inline constexpr Index kDefaultLiftCap = 100000;

struct LiftConfig {
  Index input_dim = 0;
  int degree = 2;
  LiftMode mode = LiftMode::Hadamard;
  bool center = true;
  /// Training mean; present iff center is on and the config has been fitted.
  std::optional<Eigen::VectorXd> mean;
};

/// sum_{q=1}^{p} n^q for Kronecker, n * p for Hadamard.
Index lifted_dim(Index n, int degree, LiftMode mode, Index cap = kDefaultLiftCap);
Index lifted_dim(const LiftConfig& cfg);

/// Monomial features of one sample, degree-p block first, degree-1 block last.
/// With centering on, x - mean is lifted.
Eigen::VectorXd expand(const Eigen::Ref<const Eigen::VectorXd>& x, const LiftConfig& cfg);

struct LiftedMatrix {
  LiftConfig config;  ///< resolved config, mean filled in when centering
  Eigen::MatrixXd features;  ///< d x N, column j = expand(x_j)

  Index dim() const noexcept { return features.rows(); }
  Index n_samples() const noexcept { return features.cols(); }
};

/// Column-wise expand. If centering is requested without a stored mean, the
/// sample mean of x is computed and recorded in the returned config.
LiftedMatrix expand_matrix(const DataMatrix& x, LiftConfig cfg);

}  // namespace nppe
