#include "nppe/poly_features.hpp"

#include <limits>
#include <string>

#include "nppe/error.hpp"

namespace nppe {

namespace {

void validate(const LiftConfig& cfg) {
  if (cfg.input_dim < 1) throw Error(ErrorCode::InvalidArgument, "lift input dimension must be >= 1");
  if (cfg.degree < 1) throw Error(ErrorCode::InvalidArgument, "polynomial degree must be >= 1");
  if (cfg.center && !cfg.mean) {
    throw Error(ErrorCode::InvalidArgument, "centered lift has no stored mean");
  }
  if (!cfg.center && cfg.mean) {
    throw Error(ErrorCode::InvalidArgument, "uncentered lift must not carry a mean");
  }
  if (cfg.mean && cfg.mean->size() != cfg.input_dim) {
    throw Error(ErrorCode::DimensionMismatch, "stored mean has the wrong dimension");
  }
}

// Writes the lift of `x` into `out` (length d). Each degree-q block is built from
// the degree-(q-1) block by multiplying with x, so Kronecker and Hadamard perform the
// same floating-point operations when n == 1.
void lift_into(const Eigen::Ref<const Eigen::VectorXd>& x, int degree, LiftMode mode,
               Eigen::Ref<Eigen::VectorXd> out) {
  const Index n = x.size();
  const Index d = out.size();
  // Blocks are stored highest degree first; the degree-1 block is the tail.
  Index prev_start = d - n;
  Index prev_len = n;
  out.segment(prev_start, n) = x;
  for (int q = 2; q <= degree; ++q) {
    if (mode == LiftMode::Hadamard) {
      const Index start = prev_start - n;
      for (Index i = 0; i < n; ++i) out(start + i) = x(i) * out(prev_start + i);
      prev_start = start;
    } else {
      const Index len = prev_len * n;
      const Index start = prev_start - len;
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < prev_len; ++j) {
          out(start + i * prev_len + j) = x(i) * out(prev_start + j);
        }
      }
      prev_start = start;
      prev_len = len;
    }
  }
}

}  // namespace

std::string_view to_string(LiftMode mode) noexcept {
  return mode == LiftMode::Kronecker ? "kronecker" : "hadamard";
}

LiftMode parse_lift_mode(std::string_view text) {
  if (text == "kronecker") return LiftMode::Kronecker;
  if (text == "hadamard") return LiftMode::Hadamard;
  throw Error(ErrorCode::InvalidArgument,
              "unknown lift mode '" + std::string(text) + "' (expected kronecker or hadamard)");
}

Index lifted_dim(Index n, int degree, LiftMode mode, Index cap) {
  if (n < 1 || degree < 1) {
    throw Error(ErrorCode::InvalidArgument, "lifted_dim needs n >= 1 and p >= 1");
  }
  if (mode == LiftMode::Hadamard) return n * degree;

  Index total = 0;
  Index power = 1;
  for (int q = 1; q <= degree; ++q) {
    if (power > std::numeric_limits<Index>::max() / n) {
      throw Error(ErrorCode::LiftTooLarge, "Kronecker lift dimension overflows");
    }
    power *= n;
    total += power;
    if (total > cap) {
      throw Error(ErrorCode::LiftTooLarge, "Kronecker lift of n = " + std::to_string(n) +
                                               ", p = " + std::to_string(degree) +
                                               " exceeds the dimension cap " +
                                               std::to_string(cap));
    }
  }
  return total;
}

Index lifted_dim(const LiftConfig& cfg) { return lifted_dim(cfg.input_dim, cfg.degree, cfg.mode); }

Eigen::VectorXd expand(const Eigen::Ref<const Eigen::VectorXd>& x, const LiftConfig& cfg) {
  validate(cfg);
  if (x.size() != cfg.input_dim) {
    throw Error(ErrorCode::DimensionMismatch, "sample has dimension " + std::to_string(x.size()) +
                                                  ", lift expects " +
                                                  std::to_string(cfg.input_dim));
  }
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteData, "sample contains non-finite values");

  Eigen::VectorXd out(lifted_dim(cfg));
  if (cfg.center) {
    const Eigen::VectorXd centered = x - *cfg.mean;
    lift_into(centered, cfg.degree, cfg.mode, out);
  } else {
    lift_into(x, cfg.degree, cfg.mode, out);
  }
  return out;
}

LiftedMatrix expand_matrix(const DataMatrix& x, LiftConfig cfg) {
  if (x.rows() != cfg.input_dim) {
    throw Error(ErrorCode::DimensionMismatch, "data has dimension " + std::to_string(x.rows()) +
                                                  ", lift expects " +
                                                  std::to_string(cfg.input_dim));
  }
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteData, "data contains non-finite values");
  if (cfg.center && !cfg.mean) {
    if (x.cols() == 0) throw Error(ErrorCode::EmptyInput, "cannot center an empty data set");
    cfg.mean = x.rowwise().mean();
  }
  if (!cfg.center) cfg.mean.reset();
  validate(cfg);

  LiftedMatrix out;
  out.features.resize(lifted_dim(cfg), x.cols());
  Eigen::VectorXd sample(x.rows());
  for (Index j = 0; j < x.cols(); ++j) {
    sample = x.col(j);
    if (cfg.center) sample -= *cfg.mean;
    lift_into(sample, cfg.degree, cfg.mode, out.features.col(j));
  }
  out.config = std::move(cfg);
  return out;
}

}  // namespace nppe
