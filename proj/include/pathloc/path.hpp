#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathloc/graph.hpp"
#include "pathloc/partition.hpp"

namespace pathloc {

// Ground-truth agent trajectory; consecutive nodes are adjacent.
struct TruePath {
  std::vector<NodeId> nodes;

  std::int64_t length() const { return static_cast<std::int64_t>(nodes.size()); }
  std::vector<ClusterId> projected(const Partition& partition) const {
    return project(nodes, partition);
  }
};

// Uniform random walk of T nodes. Without `start`, v_1 is uniform over nodes
// of degree >= 1. Throws ValidationError when the walk cannot continue.
TruePath random_walk_path(const Graph& graph, std::int64_t T, std::uint64_t seed,
                          std::optional<NodeId> start = std::nullopt);

// Checks the adjacency invariant; throws ValidationError naming the first gap.
void validate_path(const Graph& graph, const TruePath& path);

}  // namespace pathloc
