#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "nppe/linalg.hpp"
#include "nppe/lle_weights.hpp"
#include "nppe/poly_features.hpp"
#include "nppe/types.hpp"

namespace nppe {

enum class Method { Nppe, Npp, Onpp, Lle };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view text);

/// k = max(2, round(N / 100)), clamped to N - 1.
Index default_neighbors(Index n_samples);

struct EmbeddingResult {
  Eigen::MatrixXd coordinates;  ///< m x N
  Eigen::VectorXd eigenvalues;  ///< ascending, one per coordinate
  Method method = Method::Nppe;
};

/// Numerical checks computed while fitting, for logging.
struct FitDiagnostics {
  double constraint_error = 0.0;  ///< max |V^T B' V - I|
  double max_residual = 0.0;      ///< worst scaled eigenpair residual
  Index discarded_pairs = 0;      ///< candidates dropped as near-constant coordinates
  Index feature_dim = 0;
};

struct TrainingInfo {
  Index n_samples = 0;
  Index k = 0;
  double reg = kDefaultGramReg;
  double ridge = linalg::kDefaultRidge;
};

struct NppeOptions {
  std::optional<Index> k;  ///< defaults to default_neighbors(N)
  int degree = 2;
  LiftMode mode = LiftMode::Hadamard;
  Index dims = 2;
  double reg = kDefaultGramReg;
  double ridge = linalg::kDefaultRidge;
  bool center = true;
  /// Extra eigenpairs solved for so that near-constant directions can be dropped.
  Index candidate_slack = 5;
  /// Candidates whose coordinate variance is below this fraction of
  /// max(mean candidate variance, 1/N) are discarded.
  double variance_floor = 1e-10;
};

struct LinearOptions {
  std::optional<Index> k;
  Index dims = 2;
  double reg = kDefaultGramReg;
  double ridge = linalg::kDefaultRidge;
  Index candidate_slack = 5;
  double variance_floor = 1e-10;
};

struct LleOptions {
  std::optional<Index> k;
  Index dims = 2;
  double reg = kDefaultGramReg;
};

/// Explicit polynomial map y = V^T expand(x).
class PolynomialModel {
 public:
  PolynomialModel(LiftConfig lift, Eigen::MatrixXd coefficients, Eigen::VectorXd eigenvalues,
                  TrainingInfo training);

  const LiftConfig& lift() const noexcept { return lift_; }
  /// d x m, one coefficient vector per output coordinate.
  const Eigen::MatrixXd& coefficients() const noexcept { return coefficients_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const TrainingInfo& training() const noexcept { return training_; }
  Index input_dim() const noexcept { return lift_.input_dim; }
  Index output_dim() const noexcept { return coefficients_.cols(); }

  /// m x N' coordinates of the columns of x.
  Eigen::MatrixXd transform(const DataMatrix& x) const;

 private:
  LiftConfig lift_;
  Eigen::MatrixXd coefficients_;
  Eigen::VectorXd eigenvalues_;
  TrainingInfo training_;
};

/// Linear projection y = U^T x (NPP or ONPP).
class LinearModel {
 public:
  LinearModel(Method kind, Eigen::MatrixXd projection, Eigen::VectorXd eigenvalues,
              TrainingInfo training);

  Method kind() const noexcept { return kind_; }
  const Eigen::MatrixXd& projection() const noexcept { return projection_; }
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const TrainingInfo& training() const noexcept { return training_; }
  Index input_dim() const noexcept { return projection_.rows(); }
  Index output_dim() const noexcept { return projection_.cols(); }

  Eigen::MatrixXd transform(const DataMatrix& x) const;

 private:
  Method kind_;
  Eigen::MatrixXd projection_;
  Eigen::VectorXd eigenvalues_;
  TrainingInfo training_;
};

using ExplicitModel = std::variant<PolynomialModel, LinearModel>;

Eigen::MatrixXd transform(const ExplicitModel& model, const DataMatrix& x);
Method method_of(const ExplicitModel& model) noexcept;
Index input_dim(const ExplicitModel& model) noexcept;

struct NppeFit {
  PolynomialModel model;
  EmbeddingResult embedding;
  FitDiagnostics diagnostics;
};

struct LinearFit {
  LinearModel model;
  EmbeddingResult embedding;
  FitDiagnostics diagnostics;
};

/// Neighborhood preserving polynomial embedding: kNN graph, reconstruction
/// weights, polynomial lift X_p, then the pencil
/// (X_p M X_p^T, X_p X_p^T) solved for its smallest usable eigenpairs.
NppeFit fit_nppe(const DataMatrix& x, const NppeOptions& options = {});

/// Linear baseline solving X M X^T u = l X X^T u.
LinearFit fit_npp(const DataMatrix& x, const LinearOptions& options = {});

/// Orthogonal linear baseline: smallest eigenvectors of X M X^T.
LinearFit fit_onpp(const DataMatrix& x, const LinearOptions& options = {});

/// The ONPP step: orthonormal eigenvectors of the scatter X M X^T for its
/// `dims` smallest eigenvalues.
linalg::EigenPairs onpp_projection(const linalg::SymMatrix& scatter, Index dims);

/// Plain LLE coordinates, scaled so that (1/N) Y Y^T = I.
EmbeddingResult fit_lle(const DataMatrix& x, const LleOptions& options = {});

/// LLE coordinates from a prebuilt alignment matrix. Throws DegenerateSpectrum when M
/// does not annihilate constants or its null space is more than one-dimensional.
EmbeddingResult lle_embedding(const AlignmentMatrix& alignment, Index dims);

/// Flips coordinate rows (and the matching coefficient columns) so that the first
/// training sample sits on the positive side of each coordinate's mean.
void canonicalize_coordinate_signs(Eigen::MatrixXd& coordinates, Eigen::MatrixXd* coefficients);

}  // namespace nppe
