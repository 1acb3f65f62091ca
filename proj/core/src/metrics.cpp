#include "nppe/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "nppe/error.hpp"

namespace nppe::metrics {

std::string_view to_string(Variant variant) noexcept {
  return variant == Variant::DistanceMatrix ? "distance" : "entries";
}

Variant parse_variant(std::string_view text) {
  if (text == "distance" || text == "distance-matrix") return Variant::DistanceMatrix;
  if (text == "entries") return Variant::Entries;
  throw Error(ErrorCode::InvalidArgument,
              "unknown residual-variance variant '" + std::string(text) + "'");
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "pearson: length mismatch");
  if (a.size() < 2) throw Error(ErrorCode::DegenerateVariance, "pearson needs >= 2 values");
  const auto n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw Error(ErrorCode::DegenerateVariance, "correlation undefined: zero variance input");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> pairwise_distances(const Eigen::MatrixXd& points) {
  const Index n = points.cols();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) out.push_back((points.col(i) - points.col(j)).norm());
  }
  return out;
}

ResidualVarianceReport residual_variance(const Eigen::MatrixXd& y, const Eigen::MatrixXd& z,
                                         Variant variant) {
  if (y.cols() != z.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "embedding has " + std::to_string(y.cols()) +
                                                  " samples, reference has " +
                                                  std::to_string(z.cols()));
  }
  double r = 0.0;
  if (variant == Variant::DistanceMatrix) {
    const auto dy = pairwise_distances(y);
    const auto dz = pairwise_distances(z);
    r = pearson(dy, dz);
  } else {
    if (y.rows() != z.rows()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "entries variant needs equal coordinate counts, got " +
                      std::to_string(y.rows()) + " and " + std::to_string(z.rows()));
    }
    Eigen::MatrixXd aligned = y;
    for (Index row = 0; row < y.rows(); ++row) {
      const Eigen::VectorXd yr = y.row(row).transpose();
      const Eigen::VectorXd zr = z.row(row).transpose();
      const double c = (yr.array() - yr.mean()).matrix().dot((zr.array() - zr.mean()).matrix());
      if (c < 0.0) aligned.row(row) *= -1.0;
    }
    // Row-major flattening keeps coordinate k of sample i paired with its reference.
    const Eigen::MatrixXd yt = aligned.transpose();
    const Eigen::MatrixXd zt = z.transpose();
    r = pearson({yt.data(), static_cast<std::size_t>(yt.size())},
                {zt.data(), static_cast<std::size_t>(zt.size())});
  }
  return {1.0 - r * r, variant, y.cols()};
}

TimingReport time_transform(const ExplicitModel& model, const DataMatrix& x_test,
                            std::span<const Index> batch_sizes, int repeats) {
  if (repeats < 1) throw Error(ErrorCode::InvalidArgument, "repeats must be >= 1");
  for (std::size_t i = 0; i < batch_sizes.size(); ++i) {
    if (batch_sizes[i] < 0 || batch_sizes[i] > x_test.cols()) {
      throw Error(ErrorCode::InvalidArgument, "batch size " + std::to_string(batch_sizes[i]) +
                                                  " exceeds the " +
                                                  std::to_string(x_test.cols()) +
                                                  " available test samples");
    }
    if (i > 0 && batch_sizes[i] <= batch_sizes[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "batch sizes must be strictly increasing");
    }
  }

  using clock = std::chrono::steady_clock;
  TimingReport report;
  report.method = std::string(to_string(method_of(model)));
  volatile double sink = 0.0;
  std::vector<double> samples(static_cast<std::size_t>(repeats));
  for (const Index b : batch_sizes) {
    const DataMatrix batch = x_test.leftCols(b);
    sink = sink + transform(model, batch).sum();  // warm-up
    for (int r = 0; r < repeats; ++r) {
      const auto start = clock::now();
      const Eigen::MatrixXd y = transform(model, batch);
      const auto stop = clock::now();
      sink = sink + (y.size() ? y(0, 0) : 0.0);
      samples[static_cast<std::size_t>(r)] = std::chrono::duration<double>(stop - start).count();
    }
    std::nth_element(samples.begin(), samples.begin() + repeats / 2, samples.end());
    report.batch_sizes.push_back(b);
    report.seconds.push_back(samples[static_cast<std::size_t>(repeats / 2)]);
  }
  return report;
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
  const double r = pearson(x, y);
  return r * r;
}

}  // namespace nppe::metrics
