#include "nppe/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "nppe/error.hpp"

namespace nppe::linalg {

namespace {

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFiniteData, "matrix contains non-finite entries");
  }
}

void require_count(Index m, Index order) {
  if (m < 1) {
    throw Error(ErrorCode::InvalidArgument, "at least one eigenpair must be requested");
  }
  if (m > order) {
    throw Error(ErrorCode::TooManyRequested, "requested " + std::to_string(m) +
                                                 " eigenpairs of an order-" +
                                                 std::to_string(order) + " matrix");
  }
}

EigenPairs smallest_pairs(const Eigen::MatrixXd& a, Index m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    // Report how far the best available decomposition is from an eigenbasis.
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const double residual =
        (a * v - v * solver.eigenvalues().asDiagonal()).norm() / std::max(1.0, a.norm());
    throw Error(ErrorCode::NoConvergence,
                "symmetric eigensolver hit its iteration cap; relative residual " +
                    std::to_string(residual));
  }
  EigenPairs out;
  out.values = solver.eigenvalues().head(m);
  out.vectors = solver.eigenvectors().leftCols(m);
  return out;
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd entries, double tolerance) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square, got " +
                                                  std::to_string(entries_.rows()) + "x" +
                                                  std::to_string(entries_.cols()));
  }
  if (entries_.rows() == 0) {
    throw Error(ErrorCode::EmptyInput, "symmetric matrix has order 0");
  }
  require_finite(entries_);
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > tolerance) {
    throw Error(ErrorCode::NonSymmetric,
                "max |A(i,j) - A(j,i)| = " + std::to_string(asym) + " exceeds tolerance");
  }
}

SymMatrix SymMatrix::symmetrized(const Eigen::MatrixXd& entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square");
  }
  Eigen::MatrixXd sym = 0.5 * (entries + entries.transpose());
  return SymMatrix(std::move(sym), 0.0);
}

EigenPairs sym_eigs(const SymMatrix& a, Index m) {
  require_count(m, a.order());
  EigenPairs out = smallest_pairs(a.entries(), m);
  canonicalize_signs(out.vectors);
  return out;
}

Eigen::MatrixXd regularized(const SymMatrix& b, double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw Error(ErrorCode::InvalidArgument, "ridge must be a finite nonnegative number");
  }
  const Index d = b.order();
  Eigen::MatrixXd out = b.entries();
  const double shift = ridge * b.entries().trace() / static_cast<double>(d);
  out.diagonal().array() += shift;
  return out;
}

EigenPairs sym_generalized_eigs(const SymMatrix& a, const SymMatrix& b, Index m, double ridge) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::DimensionMismatch, "pencil orders differ: A is " +
                                                  std::to_string(a.order()) + ", B is " +
                                                  std::to_string(b.order()));
  }
  require_count(m, a.order());

  const Eigen::MatrixXd b_reg = regularized(b, ridge);
  Eigen::LLT<Eigen::MatrixXd> llt(b_reg);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "Cholesky factorization of the regularized B failed (ridge " +
                    std::to_string(ridge) + "); raise the ridge");
  }
  const auto lower = llt.matrixL();

  // C = L^{-1} A L^{-T}
  Eigen::MatrixXd tmp = lower.solve(a.entries());
  Eigen::MatrixXd c = lower.solve(tmp.transpose());
  c = 0.5 * (c + c.transpose()).eval();

  EigenPairs out = smallest_pairs(c, m);
  out.vectors = llt.matrixU().solve(out.vectors);
  canonicalize_signs(out.vectors);
  return out;
}

void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double mag = std::abs(vectors(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (vectors.rows() > 0 && vectors(arg, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

double max_scaled_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const EigenPairs& pairs) {
  const double a_norm = a.norm();
  const double b_norm = b.norm();
  double worst = 0.0;
  for (Index j = 0; j < pairs.size(); ++j) {
    const auto v = pairs.vectors.col(j);
    const double lambda = pairs.values(j);
    const double scale = (a_norm + std::abs(lambda) * b_norm) * v.norm();
    const double r = (a * v - lambda * (b * v)).norm();
    worst = std::max(worst, scale > 0.0 ? r / scale : r);
  }
  return worst;
}

double max_orthonormality_error(const Eigen::MatrixXd& b, const Eigen::MatrixXd& vectors) {
  const Index m = vectors.cols();
  const Eigen::MatrixXd gram = vectors.transpose() * b * vectors;
  return (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
}

}  // namespace nppe::linalg
