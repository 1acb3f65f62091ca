#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nppe/datasets.hpp"
#include "nppe/embedder.hpp"
#include "nppe/error.hpp"
#include "nppe/metrics.hpp"

namespace nppe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;
inline constexpr int kManifestVersion = 1;

int exit_code(ErrorCategory category) noexcept;

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// Hyperparameters shared by fit and pipeline. Unset k resolves to 1% of N.
struct FitSettings {
  std::optional<Index> k;
  int degree = 2;
  LiftMode mode = LiftMode::Hadamard;
  Index dims = 2;
  double reg = kDefaultGramReg;
  double ridge = linalg::kDefaultRidge;
  bool center = true;
  Index candidate_slack = 5;
};

struct FitOutcome {
  Method method = Method::Nppe;
  Index k = 0;
  EmbeddingResult embedding;
  std::optional<ExplicitModel> model;  ///< empty for LLE
  std::optional<FitDiagnostics> diagnostics;
};

FitOutcome fit_method(Method method, const DataMatrix& x, const FitSettings& settings);

struct PipelineConfig {
  datasets::Manifold manifold = datasets::Manifold::SwissRoll;
  Index n_train = 1000;
  Index n_test = 0;
  std::uint64_t seed = 1;
  FitSettings fit;
  std::vector<Method> methods{Method::Nppe, Method::Npp, Method::Onpp, Method::Lle};
  metrics::Variant variant = metrics::Variant::DistanceMatrix;
};

struct MethodResult {
  FitOutcome fit;
  double train_rho = 0.0;
  std::optional<Eigen::MatrixXd> test_embedding;
  std::optional<double> test_rho;
  double fit_seconds = 0.0;
};

struct PipelineResult {
  PipelineConfig config;
  datasets::SyntheticSample data;
  datasets::Split split;
  std::vector<MethodResult> methods;

  const MethodResult& result(Method method) const;
};

/// generate -> split -> fit every method -> transform held-out part -> residual variance.
PipelineResult run_pipeline(const PipelineConfig& config);

/// method,train_rho,test_rho (test_rho empty when there is no held-out set or model).
void write_comparison(std::ostream& out, const PipelineResult& result);

/// Scatter plot of a 2 x N embedding; colors interpolate a fixed palette over `color`.
std::string render_svg(const Eigen::MatrixXd& points, const Eigen::VectorXd* color = nullptr);

}  // namespace nppe::cli
