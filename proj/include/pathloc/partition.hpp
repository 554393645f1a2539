#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathloc/graph.hpp"

namespace pathloc {

using ClusterId = std::int32_t;

// Non-overlapping cover of the node set by non-empty clusters with dense ids.
class Partition {
 public:
  Partition() = default;

  // `labels[v]` is an arbitrary cluster label for node v. Labels are
  // relabeled densely in increasing label order.
  static Partition from_labels(std::span<const std::int64_t> labels);

  std::int64_t cluster_count() const { return static_cast<std::int64_t>(members_.size()); }
  std::int64_t node_count() const { return static_cast<std::int64_t>(assign_.size()); }
  ClusterId cluster_of(NodeId v) const { return assign_[v]; }
  std::span<const ClusterId> assignment() const { return assign_; }

  // Members of a cluster in increasing node order.
  std::span<const NodeId> members(ClusterId c) const { return members_[c]; }
  std::int64_t cluster_size(ClusterId c) const {
    return static_cast<std::int64_t>(members_[c].size());
  }
  std::int64_t max_cluster_size() const;

  // Square partitions keep the B x B grid index of each surviving cluster.
  std::int64_t grid_side() const { return grid_side_; }
  std::span<const std::int64_t> grid_cells() const { return grid_cell_; }
  void set_grid(std::int64_t side, std::vector<std::int64_t> cells);

 private:
  std::vector<ClusterId> assign_;
  std::vector<std::vector<NodeId>> members_;
  std::int64_t grid_side_ = 0;
  std::vector<std::int64_t> grid_cell_;
};

// Coarse graph with one super-node per cluster. Clusters I != J are adjacent
// iff some fine edge joins them; I carries a self-loop iff its induced
// subgraph has an edge.
class SuperGraph {
 public:
  SuperGraph() = default;

  std::int64_t size() const { return static_cast<std::int64_t>(offsets_.size()) - 1; }

  // Adjacent clusters, excluding the cluster itself.
  std::span<const ClusterId> neighbors(ClusterId c) const {
    return {neighbors_.data() + offsets_[c], neighbors_.data() + offsets_[c + 1]};
  }
  // Coarse Viterbi neighbourhood: neighbors plus c itself when it has a
  // self-loop, sorted.
  std::span<const ClusterId> transitions(ClusterId c) const {
    return {transitions_.data() + transition_offsets_[c],
            transitions_.data() + transition_offsets_[c + 1]};
  }
  bool has_self_loop(ClusterId c) const { return self_loop_[c] != 0; }
  std::int64_t cluster_size(ClusterId c) const { return cluster_size_[c]; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(neighbors_.size()) / 2; }
  std::int64_t self_loop_count() const;

  // Mean member position; present when the fine graph has a layout.
  const std::optional<std::vector<Point>>& centroids() const { return centroids_; }

  friend SuperGraph build_supergraph(const Graph& graph, const Partition& partition);

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<ClusterId> neighbors_;
  std::vector<std::int64_t> transition_offsets_{0};
  std::vector<ClusterId> transitions_;
  std::vector<char> self_loop_;
  std::vector<std::int64_t> cluster_size_;
  std::optional<std::vector<Point>> centroids_;
};

SuperGraph build_supergraph(const Graph& graph, const Partition& partition);

struct Coarsening {
  Partition partition;
  SuperGraph supergraph;
  std::vector<std::string> warnings;
};

// B x B tessellation of the unit square; node (x, y) goes to square
// floor(xB) + B floor(yB), coordinates equal to 1 clamp into the last row or
// column. Empty squares are dropped. `radius` defaults to the one recorded in
// the graph's origin; a warning is emitted when 1/B < radius.
Coarsening square_partition(const Graph& graph, std::int64_t squares_per_side,
                            std::optional<double> radius = std::nullopt);

struct HubShatterParams {
  std::int64_t hubs_per_round = 0;    // 0: ceil(0.005 n)
  std::int64_t max_cluster_size = 0;  // 0: ceil(n / 100)
};

// Repeatedly removes the highest-degree nodes (ties: lowest id) from
// oversized components; removed hubs become singleton clusters and
// components no larger than the size cap become clusters.
Coarsening hub_shatter_partition(const Graph& graph, const HubShatterParams& params = {});

// "node cluster" lines. Node tokens are original labels when the graph came
// from an edge list, dense ids otherwise. Every node must appear exactly once.
Coarsening import_partition(std::string_view text, const Graph& graph);

// Projection of a fine node sequence onto cluster ids.
std::vector<ClusterId> project(std::span<const NodeId> nodes, const Partition& partition);

// Largest node distance between members of clusters a and b.
double cluster_pair_max_distance(const Graph& graph, const Partition& partition, ClusterId a,
                                 ClusterId b, DistanceMode mode);

// cluster_pair_max_distance(a, c) for every cluster c, except that hop mode
// reports +inf for a cluster with any node unreachable from a.
std::vector<double> cluster_max_distance_row(const Graph& graph, const Partition& partition,
                                             ClusterId a, DistanceMode mode);

}  // namespace pathloc
