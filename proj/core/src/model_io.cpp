#include "nppe/model_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nppe/error.hpp"

namespace nppe {

namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Eigen::MatrixXd matrix_from(const json& j) {
  const auto rows = j.at("rows").get<Index>();
  const auto cols = j.at("cols").get<Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (rows < 0 || cols < 0 || static_cast<Index>(data.size()) != rows * cols) {
    throw Error(ErrorCode::FormatError, "matrix data length does not match rows * cols");
  }
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j2 = 0; j2 < cols; ++j2) m(i, j2) = data[static_cast<std::size_t>(i * cols + j2)];
  }
  return m;
}

json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from(const json& j) {
  const auto data = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(data.data(), static_cast<Index>(data.size()));
}

json training_json(const TrainingInfo& t) {
  return {{"n_samples", t.n_samples}, {"k", t.k}, {"reg", t.reg}, {"ridge", t.ridge}};
}

TrainingInfo training_from(const json& j) {
  TrainingInfo t;
  t.n_samples = j.at("n_samples").get<Index>();
  t.k = j.at("k").get<Index>();
  t.reg = j.at("reg").get<double>();
  t.ridge = j.at("ridge").get<double>();
  return t;
}

json to_json(const PolynomialModel& m) {
  const LiftConfig& lift = m.lift();
  json lj = {{"input_dim", lift.input_dim},
             {"degree", lift.degree},
             {"mode", std::string(to_string(lift.mode))},
             {"center", lift.center}};
  lj["mean"] = lift.mean ? vector_json(*lift.mean) : json(nullptr);
  return {{"format_version", kModelFormatVersion},
          {"method", "nppe"},
          {"lift", lj},
          {"coefficients", matrix_json(m.coefficients())},
          {"eigenvalues", vector_json(m.eigenvalues())},
          {"training", training_json(m.training())}};
}

json to_json(const LinearModel& m) {
  return {{"format_version", kModelFormatVersion},
          {"method", std::string(to_string(m.kind()))},
          {"projection", matrix_json(m.projection())},
          {"eigenvalues", vector_json(m.eigenvalues())},
          {"training", training_json(m.training())}};
}

}  // namespace

std::string model_to_json(const ExplicitModel& model) {
  const json j = std::visit([](const auto& m) { return to_json(m); }, model);
  return j.dump(2);
}

ExplicitModel model_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorCode::FormatError,
                  "unsupported model format_version " + std::to_string(version));
    }
    const Method method = parse_method(j.at("method").get<std::string>());
    const Eigen::VectorXd eigenvalues = vector_from(j.at("eigenvalues"));
    const TrainingInfo training = training_from(j.at("training"));
    switch (method) {
      case Method::Nppe: {
        const json& lj = j.at("lift");
        LiftConfig lift;
        lift.input_dim = lj.at("input_dim").get<Index>();
        lift.degree = lj.at("degree").get<int>();
        lift.mode = parse_lift_mode(lj.at("mode").get<std::string>());
        lift.center = lj.at("center").get<bool>();
        if (!lj.at("mean").is_null()) lift.mean = vector_from(lj.at("mean"));
        return PolynomialModel(std::move(lift), matrix_from(j.at("coefficients")), eigenvalues,
                               training);
      }
      case Method::Npp:
      case Method::Onpp:
        return LinearModel(method, matrix_from(j.at("projection")), eigenvalues, training);
      case Method::Lle:
        break;
    }
    throw Error(ErrorCode::FormatError, "LLE has no explicit map to load");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("malformed model document: ") + e.what());
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::Data) throw;
    throw Error(ErrorCode::FormatError, e.detail());
  }
}

void save_model(const std::filesystem::path& path, const ExplicitModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << model_to_json(model) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

ExplicitModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace nppe
