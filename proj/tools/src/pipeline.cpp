#include <chrono>
#include <numeric>
#include <ostream>

#include "nppe/cli.hpp"
#include "nppe/matrix_io.hpp"

namespace nppe::cli {

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Usage:
      return kExitUsage;
    case ErrorCategory::Data:
      return kExitData;
    case ErrorCategory::Numerical:
      return kExitNumerical;
  }
  return 1;
}

FitOutcome fit_method(Method method, const DataMatrix& x, const FitSettings& settings) {
  FitOutcome out;
  out.method = method;
  out.k = settings.k.value_or(default_neighbors(x.cols()));
  switch (method) {
    case Method::Nppe: {
      NppeOptions o;
      o.k = out.k;
      o.degree = settings.degree;
      o.mode = settings.mode;
      o.dims = settings.dims;
      o.reg = settings.reg;
      o.ridge = settings.ridge;
      o.center = settings.center;
      o.candidate_slack = settings.candidate_slack;
      NppeFit fit = fit_nppe(x, o);
      out.embedding = std::move(fit.embedding);
      out.diagnostics = fit.diagnostics;
      out.model.emplace(std::move(fit.model));
      break;
    }
    case Method::Npp:
    case Method::Onpp: {
      LinearOptions o;
      o.k = out.k;
      o.dims = settings.dims;
      o.reg = settings.reg;
      o.ridge = settings.ridge;
      o.candidate_slack = settings.candidate_slack;
      LinearFit fit = method == Method::Npp ? fit_npp(x, o) : fit_onpp(x, o);
      out.embedding = std::move(fit.embedding);
      out.diagnostics = fit.diagnostics;
      out.model.emplace(std::move(fit.model));
      break;
    }
    case Method::Lle: {
      LleOptions o;
      o.k = out.k;
      o.dims = settings.dims;
      o.reg = settings.reg;
      out.embedding = fit_lle(x, o);
      break;
    }
  }
  return out;
}

const MethodResult& PipelineResult::result(Method method) const {
  for (const auto& m : methods) {
    if (m.fit.method == method) return m;
  }
  throw Error(ErrorCode::InvalidArgument,
              "method " + std::string(to_string(method)) + " was not part of the pipeline");
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.n_train < 1) throw Error(ErrorCode::InvalidArgument, "--n-train must be >= 1");
  if (config.n_test < 0) throw Error(ErrorCode::InvalidArgument, "--n-test must be >= 0");
  if (config.methods.empty()) throw Error(ErrorCode::InvalidArgument, "no methods requested");

  PipelineResult result;
  result.config = config;
  const Index total = config.n_train + config.n_test;
  result.data = datasets::generate(config.manifold, total, config.seed);
  if (config.n_test > 0) {
    result.split = datasets::train_test_split(total, config.n_train, config.seed);
  } else {
    result.split.train.resize(static_cast<std::size_t>(total));
    std::iota(result.split.train.begin(), result.split.train.end(), Index{0});
  }

  const DataMatrix x_train = datasets::select_columns(result.data.ambient, result.split.train);
  const Eigen::MatrixXd z_train = datasets::select_columns(result.data.generating, result.split.train);
  const DataMatrix x_test = datasets::select_columns(result.data.ambient, result.split.test);
  const Eigen::MatrixXd z_test = datasets::select_columns(result.data.generating, result.split.test);

  for (Method method : config.methods) {
    MethodResult r;
    const auto start = std::chrono::steady_clock::now();
    r.fit = fit_method(method, x_train, config.fit);
    r.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.train_rho = metrics::residual_variance(r.fit.embedding.coordinates, z_train, config.variant).rho;
    if (config.n_test > 0 && r.fit.model) {
      r.test_embedding = transform(*r.fit.model, x_test);
      r.test_rho = metrics::residual_variance(*r.test_embedding, z_test, config.variant).rho;
    }
    result.methods.push_back(std::move(r));
  }
  return result;
}

void write_comparison(std::ostream& out, const PipelineResult& result) {
  out << "method,train_rho,test_rho\n";
  for (const auto& m : result.methods) {
    out << to_string(m.fit.method) << ',' << format_double(m.train_rho) << ',';
    if (m.test_rho) out << format_double(*m.test_rho);
    out << '\n';
  }
}

}  // namespace nppe::cli
