#pragma once

#include <Eigen/Core>

#include "nppe/types.hpp"

namespace nppe::linalg {

inline constexpr double kSymmetryTolerance = 1e-12;
/// Default Tikhonov ridge on B, relative to trace(B)/order.
inline constexpr double kDefaultRidge = 1e-9;

/// Dense real symmetric matrix. Construction rejects asymmetric or non-finite input.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd entries, double tolerance = kSymmetryTolerance);

  /// Replaces entries by (M + M^T) / 2 before validation. Use for computed products
  /// whose asymmetry is pure rounding.
  static SymMatrix symmetrized(const Eigen::MatrixXd& entries);

  Index order() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Eigen::MatrixXd entries_;
};

/// Eigenvalues ascending; one eigenvector per column.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  Index size() const noexcept { return values.size(); }
};

/// The m algebraically smallest eigenpairs of A, orthonormal vectors.
EigenPairs sym_eigs(const SymMatrix& a, Index m);

/// The m smallest eigenpairs of the pencil (A, B') with
/// B' = B + ridge * trace(B) / d * I. Vectors are B'-orthonormal.
///
/// B' is Cholesky-factored as L L^T and the problem is reduced to the standard
/// symmetric problem on L^{-1} A L^{-T}. A NotPositiveDefinite error means the
/// ridge is too small for this B.
EigenPairs sym_generalized_eigs(const SymMatrix& a, const SymMatrix& b, Index m,
                                double ridge = kDefaultRidge);

/// B + ridge * trace(B) / d * I, the matrix the generalized solver actually uses.
Eigen::MatrixXd regularized(const SymMatrix& b, double ridge);

/// Flips each column so that its largest-magnitude entry (first one on ties) is positive.
void canonicalize_signs(Eigen::MatrixXd& vectors);

/// max_i ||A v_i - l_i B v_i|| / ((||A||_F + |l_i| ||B||_F) ||v_i||).
double max_scaled_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const EigenPairs& pairs);

/// max |V^T B V - I|.
double max_orthonormality_error(const Eigen::MatrixXd& b, const Eigen::MatrixXd& vectors);

}  // namespace nppe::linalg
