#include "nppe/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "nppe/error.hpp"
#include "nppe/rng.hpp"

namespace nppe::datasets {

namespace {

constexpr double kTMin = 1.5 * std::numbers::pi;
constexpr double kTMax = 4.5 * std::numbers::pi;

void require_positive(Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
}

SyntheticSample finish(Manifold name, Eigen::MatrixXd z, std::uint64_t seed) {
  SyntheticSample out;
  out.ambient = ambient_from_generating(name, z);
  out.generating = std::move(z);
  out.name = name;
  out.seed = seed;
  return out;
}

}  // namespace

std::string_view to_string(Manifold name) noexcept {
  switch (name) {
    case Manifold::SwissRoll: return "swissroll";
    case Manifold::SwissHole: return "swisshole";
    case Manifold::Gaussian: return "gaussian";
  }
  return "unknown";
}

Manifold parse_manifold(std::string_view text) {
  if (text == "swissroll") return Manifold::SwissRoll;
  if (text == "swisshole") return Manifold::SwissHole;
  if (text == "gaussian") return Manifold::Gaussian;
  throw Error(ErrorCode::InvalidArgument, "unknown generator '" + std::string(text) +
                                              "' (expected swissroll, swisshole or gaussian)");
}

bool in_hole(double t, double h) noexcept {
  return t >= kHoleTMin && t <= kHoleTMax && h >= kHoleHMin && h <= kHoleHMax;
}

Eigen::MatrixXd ambient_from_generating(Manifold name, const Eigen::MatrixXd& z) {
  if (z.rows() != 2) throw Error(ErrorCode::DimensionMismatch, "generating coordinates must be 2-D");
  Eigen::MatrixXd x(3, z.cols());
  for (Index i = 0; i < z.cols(); ++i) {
    const double a = z(0, i);
    const double b = z(1, i);
    if (name == Manifold::Gaussian) {
      x(0, i) = a;
      x(1, i) = b;
      x(2, i) = kBumpAmplitude * std::exp(-(a * a + b * b) / (2.0 * kBumpSigma * kBumpSigma));
    } else {
      x(0, i) = a * std::cos(a);
      x(1, i) = b;
      x(2, i) = a * std::sin(a);
    }
  }
  return x;
}

SyntheticSample swiss_roll(Index n, std::uint64_t seed) {
  require_positive(n);
  Rng rng(seed);
  Eigen::MatrixXd z(2, n);
  for (Index i = 0; i < n; ++i) {
    z(0, i) = rng.uniform(kTMin, kTMax);
    z(1, i) = rng.uniform(0.0, kRollHeight);
  }
  return finish(Manifold::SwissRoll, std::move(z), seed);
}

SyntheticSample swiss_hole(Index n, std::uint64_t seed) {
  require_positive(n);
  Rng rng(seed);
  Eigen::MatrixXd z(2, n);
  for (Index i = 0; i < n; ++i) {
    double t;
    double h;
    do {
      t = rng.uniform(kTMin, kTMax);
      h = rng.uniform(0.0, kRollHeight);
    } while (in_hole(t, h));
    z(0, i) = t;
    z(1, i) = h;
  }
  return finish(Manifold::SwissHole, std::move(z), seed);
}

SyntheticSample gaussian_bump(Index n, std::uint64_t seed) {
  require_positive(n);
  Rng rng(seed);
  Eigen::MatrixXd z(2, n);
  for (Index i = 0; i < n; ++i) {
    z(0, i) = rng.uniform(-1.0, 1.0);
    z(1, i) = rng.uniform(-1.0, 1.0);
  }
  return finish(Manifold::Gaussian, std::move(z), seed);
}

SyntheticSample generate(Manifold name, Index n, std::uint64_t seed) {
  switch (name) {
    case Manifold::SwissRoll: return swiss_roll(n, seed);
    case Manifold::SwissHole: return swiss_hole(n, seed);
    case Manifold::Gaussian: return gaussian_bump(n, seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator");
}

Split train_test_split(Index n, Index n_train, std::uint64_t seed) {
  if (n < 0 || n_train < 0 || n_train > n) {
    throw Error(ErrorCode::InvalidArgument, "training size " + std::to_string(n_train) +
                                                " is outside [0, " + std::to_string(n) + "]");
  }
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Rng rng(seed);
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  Split out;
  out.train.assign(perm.begin(), perm.begin() + n_train);
  out.test.assign(perm.begin() + n_train, perm.end());
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, std::span<const Index> columns) {
  Eigen::MatrixXd out(m.rows(), static_cast<Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Index j = columns[c];
    if (j < 0 || j >= m.cols()) throw Error(ErrorCode::InvalidArgument, "column index out of range");
    out.col(static_cast<Index>(c)) = m.col(j);
  }
  return out;
}

}  // namespace nppe::datasets
