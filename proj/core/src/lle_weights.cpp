#include "nppe/lle_weights.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "nppe/error.hpp"

namespace nppe {

namespace {

// Reciprocal condition below which the closed form is abandoned for the KKT solve.
constexpr double kClosedFormRcond = 1e-12;

Eigen::VectorXd kkt_weights(const Eigen::MatrixXd& gram) {
  const Index k = gram.rows();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = gram;
  kkt.topRightCorner(k, 1).setOnes();
  kkt.bottomLeftCorner(1, k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
  lu.setThreshold(1e-12 * scale);
  if (!lu.isInvertible()) return {};
  return lu.solve(rhs).head(k);
}

}  // namespace

Eigen::VectorXd local_weights(const Eigen::Ref<const Eigen::VectorXd>& target,
                              const Eigen::Ref<const Eigen::MatrixXd>& neighbors, double reg) {
  if (!(reg >= 0.0) || !std::isfinite(reg)) {
    throw Error(ErrorCode::InvalidArgument, "Gram regularization must be finite and nonnegative");
  }
  if (neighbors.rows() != target.size()) {
    throw Error(ErrorCode::DimensionMismatch, "neighbor and target dimensions differ");
  }
  const Index k = neighbors.cols();
  const Eigen::MatrixXd diff = neighbors.colwise() - target;
  Eigen::MatrixXd gram = diff.transpose() * diff;
  const double trace = gram.trace();
  gram.diagonal().array() += trace > 0.0 ? reg * trace : reg;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  // LDLT's rcond estimate ignores exactly zero pivots, so check those separately.
  const auto pivots = ldlt.vectorD().cwiseAbs();
  const bool well_posed = ldlt.info() == Eigen::Success && ldlt.isPositive() &&
                          pivots.minCoeff() > kClosedFormRcond * pivots.maxCoeff() &&
                          ldlt.rcond() > kClosedFormRcond;
  if (well_posed) {
    const Eigen::VectorXd g_inv_e = ldlt.solve(Eigen::VectorXd::Ones(k));
    const double denom = g_inv_e.sum();
    if (std::isfinite(denom) && denom != 0.0) return g_inv_e / denom;
  }

  Eigen::VectorXd w = kkt_weights(gram);
  if (w.size() == 0 || !w.allFinite()) return {};
  return w;
}

ReconstructionWeights reconstruction_weights(const DataMatrix& x, const NeighborGraph& graph,
                                             double reg) {
  const Index n = x.cols();
  if (graph.n_samples() != n) {
    throw Error(ErrorCode::GraphMismatch, "graph covers " + std::to_string(graph.n_samples()) +
                                              " samples but data has " + std::to_string(n));
  }
  const Index k = graph.k();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n * k));

  Eigen::MatrixXd local(x.rows(), k);
  for (Index i = 0; i < n; ++i) {
    const auto nbrs = graph.neighbors(i);
    for (Index r = 0; r < k; ++r) {
      const Index j = nbrs[static_cast<std::size_t>(r)];
      if (j < 0 || j >= n || j == i) {
        throw Error(ErrorCode::GraphMismatch,
                    "invalid neighbor index in the list of sample " + std::to_string(i));
      }
      local.col(r) = x.col(j);
    }
    const Eigen::VectorXd w = local_weights(x.col(i), local, reg);
    if (w.size() == 0) {
      throw Error(ErrorCode::SingularGram,
                  "local Gram system of sample " + std::to_string(i) +
                      " is singular; raise the Gram regularization");
    }
    for (Index r = 0; r < k; ++r) {
      triplets.emplace_back(i, nbrs[static_cast<std::size_t>(r)], w(r));
    }
  }

  ReconstructionWeights out;
  out.matrix.resize(n, n);
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  return out;
}

AlignmentMatrix alignment_matrix(const ReconstructionWeights& r) {
  const Index n = r.n_samples();
  if (r.matrix.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "reconstruction weights must be square");
  }
  SparseMatrix identity(n, n);
  identity.setIdentity();

  AlignmentMatrix out;
  out.residual = identity - SparseMatrix(r.matrix);
  out.residual.makeCompressed();
  out.m = SparseMatrix(out.residual.transpose()) * out.residual;
  out.m.prune(0.0);
  out.m.makeCompressed();
  out.d = Eigen::VectorXd::Ones(n);
  return out;
}

SparseMatrix AlignmentMatrix::weights() const {
  SparseMatrix dm(d.size(), d.size());
  std::vector<Eigen::Triplet<double>> diag;
  diag.reserve(static_cast<std::size_t>(d.size()));
  for (Index i = 0; i < d.size(); ++i) diag.emplace_back(i, i, d(i));
  dm.setFromTriplets(diag.begin(), diag.end());
  SparseMatrix w = dm - m;
  w.prune(0.0);
  return w;
}

Eigen::MatrixXd aligned_scatter(const AlignmentMatrix& alignment, const Eigen::MatrixXd& features) {
  if (features.cols() != alignment.n_samples()) {
    throw Error(ErrorCode::DimensionMismatch, "feature matrix has " +
                                                  std::to_string(features.cols()) +
                                                  " samples, alignment has " +
                                                  std::to_string(alignment.n_samples()));
  }
  const Eigen::MatrixXd factor = alignment.residual * features.transpose();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(features.rows(), features.rows());
  out.selfadjointView<Eigen::Lower>().rankUpdate(factor.transpose());
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  return out;
}

Eigen::MatrixXd weighted_scatter(const AlignmentMatrix& alignment, const Eigen::MatrixXd& features) {
  if (features.cols() != alignment.n_samples()) {
    throw Error(ErrorCode::DimensionMismatch, "feature matrix and alignment sample counts differ");
  }
  const Eigen::MatrixXd scaled = features * alignment.d.cwiseSqrt().asDiagonal();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(features.rows(), features.rows());
  out.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  return out;
}

}  // namespace nppe
