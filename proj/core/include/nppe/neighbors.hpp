#pragma once

#include <span>
#include <vector>

#include "nppe/types.hpp"

namespace nppe {

/// Exact Euclidean k-nearest-neighbor lists, one per sample, closest first.
/// A sample never lists itself. Equal distances are ordered by sample index.
class NeighborGraph {
 public:
  NeighborGraph(Index n_samples, Index k, std::vector<Index> indices,
                std::vector<double> distances);

  Index n_samples() const noexcept { return n_samples_; }
  Index k() const noexcept { return k_; }

  std::span<const Index> neighbors(Index i) const {
    return {indices_.data() + i * k_, static_cast<std::size_t>(k_)};
  }
  std::span<const double> distances(Index i) const {
    return {distances_.data() + i * k_, static_cast<std::size_t>(k_)};
  }

 private:
  Index n_samples_;
  Index k_;
  std::vector<Index> indices_;
  std::vector<double> distances_;
};

/// Brute-force O(N^2 n) search. Requires 1 <= k <= N-1 and finite data.
NeighborGraph knn_graph(const DataMatrix& x, Index k);

}  // namespace nppe
