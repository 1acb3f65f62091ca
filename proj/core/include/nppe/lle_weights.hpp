#pragma once

#include <span>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "nppe/neighbors.hpp"
#include "nppe/types.hpp"

namespace nppe {

/// Default conditioning of the local Gram matrix, relative to its trace.
inline constexpr double kDefaultGramReg = 1e-3;

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// Row-stochastic N x N matrix R. Row i has exactly k stored entries, at the
/// neighbor indices of sample i, summing to one.
struct ReconstructionWeights {
  SparseRowMatrix matrix;

  Index n_samples() const noexcept { return matrix.rows(); }
};

/// Affine reconstruction weights of `target` from the columns of `neighbors`.
///
/// Solves min ||target - neighbors * w||^2 subject to sum(w) = 1 through the
/// closed form r = G'^{-1} e / (e^T G'^{-1} e), G' = G + reg * trace(G) * I
/// (reg * I when trace(G) == 0). When G' is numerically singular the bordered
/// KKT system is solved instead; SingularGram is thrown if that is singular too.
Eigen::VectorXd local_weights(const Eigen::Ref<const Eigen::VectorXd>& target,
                              const Eigen::Ref<const Eigen::MatrixXd>& neighbors, double reg);

ReconstructionWeights reconstruction_weights(const DataMatrix& x, const NeighborGraph& graph,
                                             double reg = kDefaultGramReg);

/// M = (I - R)^T (I - R) with D = I, so that M = D - W.
struct AlignmentMatrix {
  SparseMatrix residual;  ///< I - R
  SparseMatrix m;
  Eigen::VectorXd d;

  Index n_samples() const noexcept { return m.rows(); }

  /// W = D - M, which expands to R + R^T - R^T R.
  SparseMatrix weights() const;
};

AlignmentMatrix alignment_matrix(const ReconstructionWeights& r);

/// F^T F with F = (I - R) X^T, i.e. X M X^T assembled from its square-root factor.
Eigen::MatrixXd aligned_scatter(const AlignmentMatrix& alignment, const Eigen::MatrixXd& features);

/// X D X^T.
Eigen::MatrixXd weighted_scatter(const AlignmentMatrix& alignment, const Eigen::MatrixXd& features);

}  // namespace nppe
