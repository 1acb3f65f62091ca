#include "nppe/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nppe/error.hpp"
#include "nppe/neighbors.hpp"

namespace nppe {

namespace {

void require_data(const DataMatrix& x) {
  if (x.cols() == 0 || x.rows() == 0) throw Error(ErrorCode::EmptyInput, "empty training data");
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteData, "training data contains NaN or inf");
}

void require_dims(Index dims, Index available, const char* what) {
  if (dims < 1) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be >= 1");
  if (dims > available) {
    throw Error(ErrorCode::TooManyRequested, "requested " + std::to_string(dims) +
                                                 " coordinates but the " + what +
                                                 " has dimension " + std::to_string(available));
  }
}

Index resolve_k(const std::optional<Index>& k, Index n_samples) {
  return k ? *k : default_neighbors(n_samples);
}

AlignmentMatrix build_alignment(const DataMatrix& x, Index k, double reg) {
  const NeighborGraph graph = knn_graph(x, k);
  return alignment_matrix(reconstruction_weights(x, graph, reg));
}

struct ConstrainedSolution {
  Eigen::MatrixXd coefficients;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd coordinates;
  FitDiagnostics diagnostics;
};

// Smallest usable eigenpairs of (F M F^T, F D F^T + ridge) with coordinates Y = V^T F.
ConstrainedSolution solve_constrained(const Eigen::MatrixXd& features,
                                      const AlignmentMatrix& alignment, Index dims, double ridge,
                                      Index slack, double variance_floor) {
  const Index d = features.rows();
  require_dims(dims, d, "feature space");
  if (slack < 0) throw Error(ErrorCode::InvalidArgument, "candidate slack must be >= 0");

  const Eigen::MatrixXd a = aligned_scatter(alignment, features);
  const Eigen::MatrixXd b = weighted_scatter(alignment, features);
  const linalg::SymMatrix a_sym(a);
  const linalg::SymMatrix b_sym(b);

  const Index candidates = std::min(d, dims + slack);
  linalg::EigenPairs pairs = linalg::sym_generalized_eigs(a_sym, b_sym, candidates, ridge);

  const Eigen::MatrixXd coords = pairs.vectors.transpose() * features;
  const Eigen::VectorXd variance =
      (coords.colwise() - coords.rowwise().mean()).rowwise().squaredNorm() /
      static_cast<double>(features.cols());
  // Under V^T B' V = I a genuine direction carries variance near 1/N; using that as a
  // second reference catches the case where every candidate is a ridge artifact.
  const double reference =
      std::max(variance.mean(), 1.0 / static_cast<double>(features.cols()));
  const double threshold = variance_floor * reference;

  std::vector<Index> keep;
  for (Index j = 0; j < candidates && static_cast<Index>(keep.size()) < dims; ++j) {
    if (variance(j) >= threshold && variance(j) > 0.0) keep.push_back(j);
  }
  if (static_cast<Index>(keep.size()) < dims) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "only " + std::to_string(keep.size()) + " of " + std::to_string(dims) +
                    " requested coordinates survive near-constant filtering; raise the ridge "
                    "or lower the embedding dimension");
  }

  ConstrainedSolution out;
  out.coefficients.resize(d, dims);
  out.eigenvalues.resize(dims);
  out.coordinates.resize(dims, features.cols());
  for (Index c = 0; c < dims; ++c) {
    const Index j = keep[static_cast<std::size_t>(c)];
    out.coefficients.col(c) = pairs.vectors.col(j);
    out.eigenvalues(c) = pairs.values(j);
    out.coordinates.row(c) = coords.row(j);
  }
  canonicalize_coordinate_signs(out.coordinates, &out.coefficients);

  const Eigen::MatrixXd b_reg = linalg::regularized(b_sym, ridge);
  out.diagnostics.constraint_error = linalg::max_orthonormality_error(b_reg, out.coefficients);
  out.diagnostics.max_residual =
      linalg::max_scaled_residual(a, b_reg, {out.eigenvalues, out.coefficients});
  out.diagnostics.discarded_pairs = keep.back() + 1 - dims;
  out.diagnostics.feature_dim = d;
  return out;
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Nppe: return "nppe";
    case Method::Npp: return "npp";
    case Method::Onpp: return "onpp";
    case Method::Lle: return "lle";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "nppe" || text == "snppe") return Method::Nppe;
  if (text == "npp") return Method::Npp;
  if (text == "onpp") return Method::Onpp;
  if (text == "lle") return Method::Lle;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

Index default_neighbors(Index n_samples) {
  const auto one_percent = static_cast<Index>(std::llround(0.01 * static_cast<double>(n_samples)));
  return std::max<Index>(1, std::min(n_samples - 1, std::max<Index>(2, one_percent)));
}

void canonicalize_coordinate_signs(Eigen::MatrixXd& coordinates, Eigen::MatrixXd* coefficients) {
  if (coordinates.cols() == 0) return;
  for (Index r = 0; r < coordinates.rows(); ++r) {
    const double deviation = coordinates(r, 0) - coordinates.row(r).mean();
    if (deviation < 0.0) {
      coordinates.row(r) *= -1.0;
      if (coefficients) coefficients->col(r) *= -1.0;
    }
  }
}

PolynomialModel::PolynomialModel(LiftConfig lift, Eigen::MatrixXd coefficients,
                                 Eigen::VectorXd eigenvalues, TrainingInfo training)
    : lift_(std::move(lift)),
      coefficients_(std::move(coefficients)),
      eigenvalues_(std::move(eigenvalues)),
      training_(training) {
  if (coefficients_.rows() != lifted_dim(lift_)) {
    throw Error(ErrorCode::DimensionMismatch,
                "coefficient matrix has " + std::to_string(coefficients_.rows()) +
                    " rows, lift produces " + std::to_string(lifted_dim(lift_)));
  }
  if (eigenvalues_.size() != coefficients_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "one eigenvalue per coefficient vector expected");
  }
  if (lift_.center != lift_.mean.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "centered lift requires a stored mean and vice versa");
  }
}

Eigen::MatrixXd PolynomialModel::transform(const DataMatrix& x) const {
  if (x.rows() != lift_.input_dim) {
    throw Error(ErrorCode::DimensionMismatch, "model expects n = " +
                                                  std::to_string(lift_.input_dim) +
                                                  " but input has n = " + std::to_string(x.rows()));
  }
  const LiftedMatrix lifted = expand_matrix(x, lift_);
  return coefficients_.transpose() * lifted.features;
}

LinearModel::LinearModel(Method kind, Eigen::MatrixXd projection, Eigen::VectorXd eigenvalues,
                         TrainingInfo training)
    : kind_(kind),
      projection_(std::move(projection)),
      eigenvalues_(std::move(eigenvalues)),
      training_(training) {
  if (kind_ != Method::Npp && kind_ != Method::Onpp) {
    throw Error(ErrorCode::InvalidArgument, "linear model kind must be npp or onpp");
  }
  if (eigenvalues_.size() != projection_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "one eigenvalue per projection column expected");
  }
}

Eigen::MatrixXd LinearModel::transform(const DataMatrix& x) const {
  if (x.rows() != projection_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "model expects n = " +
                                                  std::to_string(projection_.rows()) +
                                                  " but input has n = " + std::to_string(x.rows()));
  }
  return projection_.transpose() * x;
}

Eigen::MatrixXd transform(const ExplicitModel& model, const DataMatrix& x) {
  return std::visit([&](const auto& m) { return m.transform(x); }, model);
}

Method method_of(const ExplicitModel& model) noexcept {
  if (const auto* linear = std::get_if<LinearModel>(&model)) return linear->kind();
  return Method::Nppe;
}

Index input_dim(const ExplicitModel& model) noexcept {
  return std::visit([](const auto& m) { return m.input_dim(); }, model);
}

NppeFit fit_nppe(const DataMatrix& x, const NppeOptions& options) {
  require_data(x);
  const Index k = resolve_k(options.k, x.cols());
  const AlignmentMatrix alignment = build_alignment(x, k, options.reg);

  LiftConfig cfg;
  cfg.input_dim = x.rows();
  cfg.degree = options.degree;
  cfg.mode = options.mode;
  cfg.center = options.center;
  LiftedMatrix lifted = expand_matrix(x, std::move(cfg));

  ConstrainedSolution sol = solve_constrained(lifted.features, alignment, options.dims,
                                              options.ridge, options.candidate_slack,
                                              options.variance_floor);

  TrainingInfo info{x.cols(), k, options.reg, options.ridge};
  PolynomialModel model(std::move(lifted.config), std::move(sol.coefficients), sol.eigenvalues,
                        info);
  EmbeddingResult embedding{std::move(sol.coordinates), std::move(sol.eigenvalues), Method::Nppe};
  return {std::move(model), std::move(embedding), sol.diagnostics};
}

LinearFit fit_npp(const DataMatrix& x, const LinearOptions& options) {
  require_data(x);
  const Index k = resolve_k(options.k, x.cols());
  const AlignmentMatrix alignment = build_alignment(x, k, options.reg);

  ConstrainedSolution sol = solve_constrained(x, alignment, options.dims, options.ridge,
                                              options.candidate_slack, options.variance_floor);

  TrainingInfo info{x.cols(), k, options.reg, options.ridge};
  LinearModel model(Method::Npp, std::move(sol.coefficients), sol.eigenvalues, info);
  EmbeddingResult embedding{std::move(sol.coordinates), std::move(sol.eigenvalues), Method::Npp};
  return {std::move(model), std::move(embedding), sol.diagnostics};
}

LinearFit fit_onpp(const DataMatrix& x, const LinearOptions& options) {
  require_data(x);
  require_dims(options.dims, x.rows(), "input space");
  const Index k = resolve_k(options.k, x.cols());
  const AlignmentMatrix alignment = build_alignment(x, k, options.reg);

  const Eigen::MatrixXd a = aligned_scatter(alignment, x);
  linalg::EigenPairs pairs = onpp_projection(linalg::SymMatrix(a), options.dims);

  Eigen::MatrixXd coords = pairs.vectors.transpose() * x;
  canonicalize_coordinate_signs(coords, &pairs.vectors);

  FitDiagnostics diag;
  diag.constraint_error = (pairs.vectors.transpose() * pairs.vectors -
                           Eigen::MatrixXd::Identity(options.dims, options.dims))
                              .cwiseAbs()
                              .maxCoeff();
  diag.max_residual = linalg::max_scaled_residual(
      a, Eigen::MatrixXd::Identity(x.rows(), x.rows()), pairs);
  diag.feature_dim = x.rows();

  TrainingInfo info{x.cols(), k, options.reg, 0.0};
  LinearModel model(Method::Onpp, pairs.vectors, pairs.values, info);
  EmbeddingResult embedding{std::move(coords), pairs.values, Method::Onpp};
  return {std::move(model), std::move(embedding), diag};
}

linalg::EigenPairs onpp_projection(const linalg::SymMatrix& scatter, Index dims) {
  require_dims(dims, scatter.order(), "input space");
  return linalg::sym_eigs(scatter, dims);
}

EmbeddingResult lle_embedding(const AlignmentMatrix& alignment, Index dims) {
  const Index n = alignment.n_samples();
  require_dims(dims, n - 1, "non-constant eigenspace of M");

  const Eigen::MatrixXd m = Eigen::MatrixXd(alignment.m);
  const double m_scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double constant_leak = (m * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
  if (constant_leak > 1e-8 * m_scale) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "alignment matrix does not annihilate constant vectors (max |M 1| = " +
                    std::to_string(constant_leak) +
                    "); reconstruction weights must have unit row sums");
  }

  linalg::EigenPairs pairs = linalg::sym_eigs(linalg::SymMatrix::symmetrized(m), dims + 1);
  const double null_floor = 1e-10 * m.trace() / static_cast<double>(n);
  if (pairs.values(1) <= null_floor) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "M has more than one null direction; the neighbor graph is likely disconnected, "
                "increase k");
  }

  EmbeddingResult out;
  out.method = Method::Lle;
  out.eigenvalues = pairs.values.tail(dims);
  out.coordinates =
      std::sqrt(static_cast<double>(n)) * pairs.vectors.rightCols(dims).transpose();
  canonicalize_coordinate_signs(out.coordinates, nullptr);
  return out;
}

EmbeddingResult fit_lle(const DataMatrix& x, const LleOptions& options) {
  require_data(x);
  const Index k = resolve_k(options.k, x.cols());
  return lle_embedding(build_alignment(x, k, options.reg), options.dims);
}

}  // namespace nppe
