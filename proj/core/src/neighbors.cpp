#include "nppe/neighbors.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "nppe/error.hpp"

namespace nppe {

NeighborGraph::NeighborGraph(Index n_samples, Index k, std::vector<Index> indices,
                             std::vector<double> distances)
    : n_samples_(n_samples), k_(k), indices_(std::move(indices)), distances_(std::move(distances)) {
  const auto expected = static_cast<std::size_t>(n_samples_ * k_);
  if (indices_.size() != expected || distances_.size() != expected) {
    throw Error(ErrorCode::GraphMismatch, "neighbor lists do not hold n_samples * k entries");
  }
}

NeighborGraph knn_graph(const DataMatrix& x, Index k) {
  const Index n = x.cols();
  if (n == 0 || x.rows() == 0) {
    throw Error(ErrorCode::EmptyInput, "cannot build a neighbor graph over an empty data set");
  }
  if (!x.allFinite()) {
    throw Error(ErrorCode::NonFiniteData, "data contains NaN or infinite entries");
  }
  if (k < 1 || k > n - 1) {
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " must lie in [1, " +
                                          std::to_string(n - 1) + "] for " + std::to_string(n) +
                                          " samples");
  }

  std::vector<Index> indices(static_cast<std::size_t>(n * k));
  std::vector<double> distances(indices.size());
  std::vector<std::pair<double, Index>> candidates(static_cast<std::size_t>(n - 1));

  for (Index i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      candidates[c++] = {(x.col(j) - x.col(i)).norm(), j};
    }
    // pair ordering gives distance first, then ascending index
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end());
    for (Index r = 0; r < k; ++r) {
      indices[static_cast<std::size_t>(i * k + r)] = candidates[static_cast<std::size_t>(r)].second;
      distances[static_cast<std::size_t>(i * k + r)] = candidates[static_cast<std::size_t>(r)].first;
    }
  }
  return NeighborGraph(n, k, std::move(indices), std::move(distances));
}

}  // namespace nppe
