#pragma once

// Reference implementations used only by tests. Each one takes a different
// numerical route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace oracle {

/// Cyclic Jacobi rotations on a symmetric matrix. Returns eigenvalues ascending
/// with matching eigenvector columns.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values(i) = a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]);
    vectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return {values, vectors};
}

/// Generalized eigenvalues of (A, B), B SPD, via the symmetric inverse square root
/// B^{-1/2} = Q diag(1/sqrt(l)) Q^T (no Cholesky).
inline Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const auto [bl, bq] = jacobi_eigen(b);
  const Eigen::MatrixXd inv_sqrt = bq * bl.cwiseSqrt().cwiseInverse().asDiagonal() * bq.transpose();
  Eigen::MatrixXd c = inv_sqrt * a * inv_sqrt;
  c = 0.5 * (c + c.transpose()).eval();
  return jacobi_eigen(c).first;
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  double det = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    if (m(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
    }
  }
  return det;
}

/// Solves a dense square system by Gaussian elimination with partial pivoting.
inline Eigen::VectorXd gauss_solve(Eigen::MatrixXd m, Eigen::VectorXd rhs) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    m.row(piv).swap(m.row(c));
    std::swap(rhs(piv), rhs(c));
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const double f = m(r, c) / m(c, c);
      for (Eigen::Index k = c; k < n; ++k) m(r, k) -= f * m(c, k);
      rhs(r) -= f * rhs(c);
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    double s = rhs(r);
    for (Eigen::Index k = r + 1; k < n; ++k) s -= m(r, k) * x(k);
    x(r) = s / m(r, r);
  }
  return x;
}

/// Equality-constrained least squares min ||t - N w||^2 s.t. sum w = 1 with the same
/// Gram conditioning as the library, solved through the bordered KKT system.
inline Eigen::VectorXd kkt_weights(const Eigen::VectorXd& target, const Eigen::MatrixXd& nbrs,
                                   double reg) {
  const Eigen::Index k = nbrs.cols();
  Eigen::MatrixXd g(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index l = 0; l < k; ++l) {
      double s = 0.0;
      for (Eigen::Index r = 0; r < target.size(); ++r)
        s += (nbrs(r, j) - target(r)) * (nbrs(r, l) - target(r));
      g(j, l) = s;
    }
  const double tr = g.trace();
  for (Eigen::Index j = 0; j < k; ++j) g(j, j) += tr > 0 ? reg * tr : reg;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
  kkt.topLeftCorner(k, k) = 2.0 * g;
  kkt.topRightCorner(k, 1).setOnes();
  kkt.bottomLeftCorner(1, k).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  return gauss_solve(kkt, rhs).head(k);
}

/// All-pairs distance sort per sample, ties by index.
inline std::vector<std::vector<Eigen::Index>> knn_bruteforce(const Eigen::MatrixXd& x, Eigen::Index k) {
  std::vector<std::vector<Eigen::Index>> out;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    std::vector<std::pair<double, Eigen::Index>> all;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j == i) continue;
      double s = 0.0;
      for (Eigen::Index r = 0; r < x.rows(); ++r) s += (x(r, i) - x(r, j)) * (x(r, i) - x(r, j));
      all.emplace_back(std::sqrt(s), j);
    }
    std::sort(all.begin(), all.end());
    std::vector<Eigen::Index> ids;
    for (Eigen::Index r = 0; r < k; ++r) ids.push_back(all[static_cast<std::size_t>(r)].second);
    out.push_back(ids);
  }
  return out;
}

/// Kronecker lift by explicit enumeration of ordered index tuples (i_1, ..., i_q),
/// lexicographic, each monomial evaluated as a fresh product.
inline Eigen::VectorXd kronecker_monomials(const Eigen::VectorXd& x, int degree) {
  const Eigen::Index n = x.size();
  std::vector<double> out;
  for (int q = degree; q >= 1; --q) {
    std::vector<Eigen::Index> tuple(static_cast<std::size_t>(q), 0);
    while (true) {
      double prod = 1.0;
      for (auto i : tuple) prod *= x(i);
      out.push_back(prod);
      int pos = q - 1;
      while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == n) {
        tuple[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

/// Textbook single-pass Pearson: (n Sxy - Sx Sy) / sqrt((n Sxx - Sx^2)(n Syy - Sy^2)).
inline double pearson_textbook(const std::vector<double>& a, const std::vector<double>& b) {
  long double n = static_cast<long double>(a.size()), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sx += a[i];
    sy += b[i];
    sxx += static_cast<long double>(a[i]) * a[i];
    syy += static_cast<long double>(b[i]) * b[i];
    sxy += static_cast<long double>(a[i]) * b[i];
  }
  return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = dist(gen);
  return m;
}

inline Eigen::MatrixXd random_symmetric(Eigen::Index n, std::uint64_t seed) {
  const Eigen::MatrixXd r = random_matrix(n, n, seed);
  return 0.5 * (r + r.transpose());
}

inline Eigen::MatrixXd random_spd(Eigen::Index n, std::uint64_t seed) {
  const Eigen::MatrixXd r = random_matrix(n, n, seed);
  return r * r.transpose() + static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n);
}

inline Eigen::MatrixXd random_psd(Eigen::Index n, Eigen::Index rank, std::uint64_t seed) {
  const Eigen::MatrixXd r = random_matrix(n, rank, seed);
  return r * r.transpose();
}

/// Projector Frobenius distance between the column spans of orthonormal U and V.
inline double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  return (u * u.transpose() - v * v.transpose()).norm();
}

}  // namespace oracle
