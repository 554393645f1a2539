#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathloc/error.hpp"

namespace pathloc {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double euclidean(const Point& a, const Point& b);

// Node metric for destination distances: straight-line distance in the
// layout, or hop count in the graph.
enum class DistanceMode { euclidean, hop };

// How a graph was produced; carried into serialized output so a graph file
// identifies the generator call that made it.
struct GraphOrigin {
  std::string generator;        // "rgg", "hub-community", "edge-list", ...
  std::uint64_t seed = 0;
  double intensity = 0.0;       // rgg: expected node count (Poisson mode)
  std::int64_t fixed_n = -1;    // rgg: exact node count, -1 in Poisson mode
  double radius = 0.0;          // rgg: connection radius
};

// Undirected simple graph on dense ids 0..n-1 stored as sorted adjacency
// lists. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Drops self-loops and duplicate/reversed edges. Throws ValidationError on
  // out-of-range ids or a layout with the wrong size or coordinates outside
  // the unit square.
  static Graph from_edges(std::int64_t n, std::span<const Edge> edges,
                          std::optional<std::vector<Point>> layout = {},
                          std::optional<GraphOrigin> origin = {});

  std::int64_t node_count() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  // Each edge once with first < second, lexicographically sorted.
  std::span<const Edge> edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::int64_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // Viterbi transition set at the fine level: the agent must move.
  std::span<const NodeId> transitions(NodeId v) const { return neighbors(v); }
  std::int64_t size() const { return node_count(); }

  bool has_layout() const { return layout_.has_value(); }
  const std::vector<Point>& layout() const;
  const Point& position(NodeId v) const { return layout().at(v); }

  const std::optional<GraphOrigin>& origin() const { return origin_; }

  // Original labels for graphs ingested from an edge list (dense id -> label).
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }
  void set_original_ids(std::vector<std::int64_t> ids);

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<Edge> edges_;
  std::optional<std::vector<Point>> layout_;
  std::optional<GraphOrigin> origin_;
  std::vector<std::int64_t> original_ids_;
};

// Parses "u v" lines; '#' comment lines and blank lines are skipped. Labels
// may be any 64-bit integers and are relabeled densely in order of first
// appearance.
Graph load_edge_list(std::string_view text);
Graph load_edge_list_file(const std::string& path);

struct RggParams {
  double intensity = 0.0;        // Poisson mean node count
  std::int64_t fixed_n = -1;     // when >= 0, use exactly this many nodes
  double radius = 0.0;
  std::uint64_t seed = 0;
};

// Random geometric graph on the unit square: uniform positions, an edge for
// every pair within Euclidean distance `radius`.
Graph generate_rgg(const RggParams& params);

// Geometric graph from explicit positions (used by tests and by generate_rgg).
Graph geometric_graph(std::vector<Point> positions, double radius,
                      std::optional<GraphOrigin> origin = {});

// Hub-and-community graph: `communities` blocks of `community_size` nodes,
// each a ring lattice with `ring_degree` nearest neighbours, plus `hubs`
// nodes joined to `hub_degree` uniformly chosen non-hub nodes. Nodes shatter
// into the communities once the hubs are removed.
struct HubCommunityParams {
  std::int64_t communities = 200;
  std::int64_t community_size = 50;
  std::int64_t ring_degree = 6;
  std::int64_t hubs = 50;
  std::int64_t hub_degree = 20;
  std::uint64_t seed = 0;
};
Graph generate_hub_community(const HubCommunityParams& params);

// Versioned JSON: {"version","n","edges","layout"?,"seedInfo"?}. Field order
// is fixed so identical graphs serialize to identical bytes.
std::string graph_to_json(const Graph& graph);
Graph graph_from_json(std::string_view text);

// Unweighted BFS from `source` over anything exposing size() and
// neighbors(i). Unreachable entries are -1.
template <class Adjacency>
std::vector<std::int64_t> bfs_hops(const Adjacency& adjacency, std::int32_t source) {
  std::vector<std::int64_t> dist(static_cast<std::size_t>(adjacency.size()), -1);
  std::queue<std::int32_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::int32_t u = frontier.front();
    frontier.pop();
    for (const std::int32_t w : adjacency.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

// Hop count between a and b; nullopt when they are disconnected.
template <class Adjacency>
std::optional<std::int64_t> hop_distance(const Adjacency& adjacency, std::int32_t a,
                                         std::int32_t b) {
  if (a < 0 || b < 0 || a >= adjacency.size() || b >= adjacency.size()) {
    throw ValidationError("hop_distance: id out of range");
  }
  if (a == b) return 0;
  const auto dist = bfs_hops(adjacency, a);
  if (dist[b] < 0) return std::nullopt;
  return dist[b];
}

// Distance between two nodes under `mode`; nullopt for a disconnected pair in
// hop mode. Euclidean mode requires a layout.
std::optional<double> node_distance(const Graph& graph, NodeId a, NodeId b, DistanceMode mode);

}  // namespace pathloc
