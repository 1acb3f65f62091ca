#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "nppe/cli.hpp"

namespace nppe::cli {

namespace {

struct Rgb {
  double r, g, b;
};

// Five viridis stops, interpolated linearly.
constexpr std::array<Rgb, 5> kPalette{{
    {68, 1, 84},
    {59, 82, 139},
    {33, 145, 140},
    {94, 201, 98},
    {253, 231, 37},
}};

std::string hex_color(double u) {
  u = std::clamp(u, 0.0, 1.0) * static_cast<double>(kPalette.size() - 1);
  const auto lo = std::min(static_cast<std::size_t>(u), kPalette.size() - 2);
  const double f = u - static_cast<double>(lo);
  const Rgb& a = kPalette[lo];
  const Rgb& b = kPalette[lo + 1];
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + f * (b.g - a.g))),
                static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Eigen::MatrixXd& points, const Eigen::VectorXd* color) {
  if (points.rows() != 2) {
    throw Error(ErrorCode::InvalidArgument,
                "plot needs a 2-column embedding, got " + std::to_string(points.rows()) + " columns");
  }
  if (points.cols() == 0) throw Error(ErrorCode::EmptyInput, "nothing to plot");
  if (!points.allFinite()) throw Error(ErrorCode::NonFiniteData, "embedding has non-finite values");
  if (color != nullptr && color->size() != points.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "color column has " + std::to_string(color->size()) +
                                                  " values for " + std::to_string(points.cols()) +
                                                  " points");
  }

  constexpr double size = 600.0;
  constexpr double margin = 20.0;
  const Eigen::Vector2d lo = points.rowwise().minCoeff();
  const Eigen::Vector2d hi = points.rowwise().maxCoeff();
  const double span = std::max((hi - lo).maxCoeff(), 1e-300);
  const double scale = (size - 2.0 * margin) / span;

  double c_lo = 0.0;
  double c_span = 1.0;
  if (color != nullptr) {
    c_lo = color->minCoeff();
    c_span = std::max(color->maxCoeff() - c_lo, 1e-300);
  }

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  svg += "<rect width=\"600\" height=\"600\" fill=\"#ffffff\"/>\n";
  for (Index i = 0; i < points.cols(); ++i) {
    const double px = margin + (points(0, i) - lo(0)) * scale;
    const double py = size - margin - (points(1, i) - lo(1)) * scale;
    const std::string fill = color != nullptr ? hex_color(((*color)(i) - c_lo) / c_span) : hex_color(0.25);
    svg += "<circle cx=\"" + fixed(px) + "\" cy=\"" + fixed(py) + "\" r=\"2\" fill=\"" + fill + "\"/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace nppe::cli
