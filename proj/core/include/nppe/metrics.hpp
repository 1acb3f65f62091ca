#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "nppe/embedder.hpp"
#include "nppe/types.hpp"

namespace nppe::metrics {

/// DistanceMatrix correlates pairwise distances (rotation and sign invariant);
/// Entries correlates raw coordinates after per-row sign alignment.
enum class Variant { DistanceMatrix, Entries };

std::string_view to_string(Variant variant) noexcept;
Variant parse_variant(std::string_view text);

struct ResidualVarianceReport {
  double rho = 0.0;  ///< 1 - R^2
  Variant variant = Variant::DistanceMatrix;
  Index n_samples = 0;
};

double pearson(std::span<const double> a, std::span<const double> b);

/// Upper-triangle (i < j) pairwise Euclidean distances between columns, row-major over i.
std::vector<double> pairwise_distances(const Eigen::MatrixXd& points);

/// rho = 1 - R^2 between embedding Y (m x N) and generating coordinates Z (m' x N).
ResidualVarianceReport residual_variance(const Eigen::MatrixXd& y, const Eigen::MatrixXd& z,
                                         Variant variant = Variant::DistanceMatrix);

struct TimingReport {
  std::string method;
  std::vector<Index> batch_sizes;
  std::vector<double> seconds;  ///< median wall time per batch
};

inline constexpr int kDefaultRepeats = 5;

/// Median wall time of transforming the first b columns of x_test, for each b.
/// One untimed warm-up precedes every batch. Results are only meaningful on an
/// otherwise idle, single-threaded configuration.
TimingReport time_transform(const ExplicitModel& model, const DataMatrix& x_test,
                            std::span<const Index> batch_sizes, int repeats = kDefaultRepeats);

/// Least-squares line through (x, y); returns R^2 of the fit.
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

}  // namespace nppe::metrics
