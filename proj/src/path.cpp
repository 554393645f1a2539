#include "pathloc/path.hpp"

#include "pathloc/rng.hpp"

namespace pathloc {

TruePath random_walk_path(const Graph& graph, std::int64_t T, std::uint64_t seed,
                          std::optional<NodeId> start) {
  if (T < 1) throw ValidationError("random walk: T must be at least 1");
  if (graph.node_count() == 0) throw ValidationError("random walk: empty graph");
  Rng rng(seed);
  NodeId current = 0;
  if (start) {
    if (*start < 0 || *start >= graph.node_count()) {
      throw ValidationError("random walk: start node out of range");
    }
    current = *start;
  } else {
    std::vector<NodeId> movable;
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      if (graph.degree(v) > 0) movable.push_back(v);
    }
    if (movable.empty()) throw ValidationError("random walk: graph has no edges");
    current = movable[rng.uniform_index(movable.size())];
  }
  TruePath path;
  path.nodes.reserve(static_cast<std::size_t>(T));
  path.nodes.push_back(current);
  for (std::int64_t t = 1; t < T; ++t) {
    const auto adj = graph.neighbors(current);
    if (adj.empty()) {
      throw ValidationError("random walk: node " + std::to_string(current) +
                            " is isolated; cannot continue a connected path");
    }
    current = adj[rng.uniform_index(adj.size())];
    path.nodes.push_back(current);
  }
  return path;
}

void validate_path(const Graph& graph, const TruePath& path) {
  if (path.nodes.empty()) throw ValidationError("path is empty");
  for (const NodeId v : path.nodes) {
    if (v < 0 || v >= graph.node_count()) throw ValidationError("path node out of range");
  }
  for (std::size_t t = 1; t < path.nodes.size(); ++t) {
    if (!graph.has_edge(path.nodes[t - 1], path.nodes[t])) {
      throw ValidationError("path step " + std::to_string(t) + " (" +
                            std::to_string(path.nodes[t - 1]) + " -> " +
                            std::to_string(path.nodes[t]) + ") is not an edge");
    }
  }
}

}  // namespace pathloc
