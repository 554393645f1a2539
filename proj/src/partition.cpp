#include "pathloc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "line_reader.hpp"

namespace pathloc {

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
  std::vector<std::int64_t> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  Partition p;
  p.assign_.resize(labels.size());
  p.members_.resize(distinct.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), labels[v]);
    const auto c = static_cast<ClusterId>(it - distinct.begin());
    p.assign_[v] = c;
    p.members_[c].push_back(static_cast<NodeId>(v));
  }
  return p;
}

std::int64_t Partition::max_cluster_size() const {
  std::int64_t best = 0;
  for (const auto& m : members_) best = std::max<std::int64_t>(best, static_cast<std::int64_t>(m.size()));
  return best;
}

void Partition::set_grid(std::int64_t side, std::vector<std::int64_t> cells) {
  if (static_cast<std::int64_t>(cells.size()) != cluster_count()) {
    throw ValidationError("partition: grid metadata size does not match cluster count");
  }
  grid_side_ = side;
  grid_cell_ = std::move(cells);
}

std::int64_t SuperGraph::self_loop_count() const {
  return std::count(self_loop_.begin(), self_loop_.end(), char{1});
}

SuperGraph build_supergraph(const Graph& graph, const Partition& partition) {
  if (partition.node_count() != graph.node_count()) {
    throw ValidationError("supergraph: partition does not cover the graph");
  }
  const std::int64_t m = partition.cluster_count();
  SuperGraph sg;
  sg.self_loop_.assign(static_cast<std::size_t>(m), 0);
  sg.cluster_size_.resize(static_cast<std::size_t>(m));
  for (ClusterId c = 0; c < m; ++c) sg.cluster_size_[c] = partition.cluster_size(c);

  std::vector<std::pair<ClusterId, ClusterId>> arcs;
  for (const auto& [u, v] : graph.edges()) {
    const ClusterId cu = partition.cluster_of(u);
    const ClusterId cv = partition.cluster_of(v);
    if (cu == cv) {
      sg.self_loop_[cu] = 1;
    } else {
      arcs.emplace_back(cu, cv);
      arcs.emplace_back(cv, cu);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  sg.offsets_.assign(static_cast<std::size_t>(m) + 1, 0);
  sg.neighbors_.reserve(arcs.size());
  for (const auto& [a, b] : arcs) {
    ++sg.offsets_[a + 1];
    sg.neighbors_.push_back(b);
  }
  for (std::int64_t c = 0; c < m; ++c) sg.offsets_[c + 1] += sg.offsets_[c];

  sg.transition_offsets_.assign(static_cast<std::size_t>(m) + 1, 0);
  sg.transitions_.reserve(arcs.size() + static_cast<std::size_t>(m));
  for (ClusterId c = 0; c < m; ++c) {
    bool self_pending = sg.self_loop_[c] != 0;
    for (const ClusterId d : sg.neighbors(c)) {
      if (self_pending && c < d) {
        sg.transitions_.push_back(c);
        self_pending = false;
      }
      sg.transitions_.push_back(d);
    }
    if (self_pending) sg.transitions_.push_back(c);
    sg.transition_offsets_[c + 1] = static_cast<std::int64_t>(sg.transitions_.size());
  }

  if (graph.has_layout()) {
    std::vector<Point> centroid(static_cast<std::size_t>(m));
    for (ClusterId c = 0; c < m; ++c) {
      for (const NodeId v : partition.members(c)) {
        centroid[c].x += graph.position(v).x;
        centroid[c].y += graph.position(v).y;
      }
      const auto size = static_cast<double>(partition.cluster_size(c));
      centroid[c].x /= size;
      centroid[c].y /= size;
    }
    sg.centroids_ = std::move(centroid);
  }
  return sg;
}

Coarsening square_partition(const Graph& graph, std::int64_t squares_per_side,
                            std::optional<double> radius) {
  if (!graph.has_layout()) throw ValidationError("square partition requires a node layout");
  if (squares_per_side < 1) throw ValidationError("square partition: B must be at least 1");
  const std::int64_t b = squares_per_side;
  auto cell_of = [b](double c) {
    return std::min<std::int64_t>(b - 1, static_cast<std::int64_t>(std::floor(c * static_cast<double>(b))));
  };
  std::vector<std::int64_t> labels(static_cast<std::size_t>(graph.node_count()));
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    const Point& p = graph.position(v);
    labels[v] = cell_of(p.x) + b * cell_of(p.y);
  }
  Coarsening out;
  out.partition = Partition::from_labels(labels);
  std::vector<std::int64_t> cells(labels);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  out.partition.set_grid(b, std::move(cells));

  if (!radius && graph.origin() && graph.origin()->radius > 0.0) radius = graph.origin()->radius;
  if (radius && 1.0 / static_cast<double>(b) < *radius) {
    out.warnings.push_back("square side 1/B = " + std::to_string(1.0 / static_cast<double>(b)) +
                           " is below the connection radius " + std::to_string(*radius) +
                           "; super-edges may skip squares");
  }
  out.supergraph = build_supergraph(graph, out.partition);
  return out;
}

Coarsening hub_shatter_partition(const Graph& graph, const HubShatterParams& params) {
  const std::int64_t n = graph.node_count();
  const auto default_k = static_cast<std::int64_t>(std::ceil(0.005 * static_cast<double>(n)));
  const auto default_c = static_cast<std::int64_t>(std::ceil(static_cast<double>(n) / 100.0));
  const std::int64_t k = params.hubs_per_round > 0 ? params.hubs_per_round : std::max<std::int64_t>(1, default_k);
  const std::int64_t cap = params.max_cluster_size > 0 ? params.max_cluster_size : std::max<std::int64_t>(1, default_c);

  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<std::int64_t> degree(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) degree[v] = graph.degree(v);
  std::vector<std::int64_t> labels(static_cast<std::size_t>(n), -1);
  std::int64_t next_label = 0;

  // Connected components among active nodes of `nodes`, each sorted, in
  // order of their smallest node.
  std::vector<std::int64_t> stamp(static_cast<std::size_t>(n), -1);
  std::int64_t stamp_id = 0;
  auto components_of = [&](std::vector<NodeId> nodes) {
    std::sort(nodes.begin(), nodes.end());
    std::vector<std::vector<NodeId>> comps;
    const std::int64_t visit = stamp_id++;
    for (const NodeId root : nodes) {
      if (stamp[root] == visit) continue;
      std::vector<NodeId> comp{root};
      stamp[root] = visit;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (const NodeId w : graph.neighbors(comp[i])) {
          if (active[w] && stamp[w] != visit) {
            stamp[w] = visit;
            comp.push_back(w);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    return comps;
  };

  std::vector<NodeId> all(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  auto pending = components_of(std::move(all));
  std::reverse(pending.begin(), pending.end());

  while (!pending.empty()) {
    std::vector<NodeId> comp = std::move(pending.back());
    pending.pop_back();
    if (static_cast<std::int64_t>(comp.size()) <= cap) {
      for (const NodeId v : comp) labels[v] = next_label;
      ++next_label;
      continue;
    }
    const auto hubs = std::min<std::int64_t>(k, static_cast<std::int64_t>(comp.size()));
    std::partial_sort(comp.begin(), comp.begin() + hubs, comp.end(), [&](NodeId a, NodeId b) {
      return degree[a] != degree[b] ? degree[a] > degree[b] : a < b;
    });
    for (std::int64_t i = 0; i < hubs; ++i) {
      const NodeId h = comp[i];
      active[h] = 0;
      labels[h] = next_label++;
      for (const NodeId w : graph.neighbors(h)) {
        if (active[w]) --degree[w];
      }
    }
    auto pieces = components_of(std::vector<NodeId>(comp.begin() + hubs, comp.end()));
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) pending.push_back(std::move(*it));
  }

  Coarsening out;
  out.partition = Partition::from_labels(labels);
  out.supergraph = build_supergraph(graph, out.partition);
  return out;
}

Coarsening import_partition(std::string_view text, const Graph& graph) {
  const std::int64_t n = graph.node_count();
  std::unordered_map<std::int64_t, NodeId> by_label;
  const auto& original = graph.original_ids();
  for (std::size_t v = 0; v < original.size(); ++v) by_label.emplace(original[v], static_cast<NodeId>(v));

  std::vector<std::int64_t> labels(static_cast<std::size_t>(n), 0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  detail::for_each_data_line(text, [&](std::size_t line_no, const std::vector<std::int64_t>& tokens) {
    if (tokens.size() != 2) throw ParseError(line_no, "expected 'node cluster'");
    NodeId v = -1;
    if (!original.empty()) {
      const auto it = by_label.find(tokens[0]);
      if (it == by_label.end()) throw ParseError(line_no, "unknown node " + std::to_string(tokens[0]));
      v = it->second;
    } else {
      if (tokens[0] < 0 || tokens[0] >= n) throw ParseError(line_no, "node id out of range");
      v = static_cast<NodeId>(tokens[0]);
    }
    if (seen[v]) throw ParseError(line_no, "node " + std::to_string(tokens[0]) + " assigned twice");
    seen[v] = 1;
    labels[v] = tokens[1];
  });
  for (NodeId v = 0; v < n; ++v) {
    if (!seen[v]) {
      const std::int64_t shown = original.empty() ? v : original[v];
      throw ValidationError("partition file: node " + std::to_string(shown) + " is not assigned");
    }
  }
  Coarsening out;
  out.partition = Partition::from_labels(labels);
  out.supergraph = build_supergraph(graph, out.partition);
  return out;
}

std::vector<ClusterId> project(std::span<const NodeId> nodes, const Partition& partition) {
  std::vector<ClusterId> out;
  out.reserve(nodes.size());
  for (const NodeId v : nodes) out.push_back(partition.cluster_of(v));
  return out;
}

double cluster_pair_max_distance(const Graph& graph, const Partition& partition, ClusterId a,
                                 ClusterId b, DistanceMode mode) {
  double best = 0.0;
  if (mode == DistanceMode::euclidean) {
    for (const NodeId u : partition.members(a)) {
      for (const NodeId v : partition.members(b)) {
        best = std::max(best, euclidean(graph.position(u), graph.position(v)));
      }
    }
    return best;
  }
  for (const NodeId u : partition.members(a)) {
    const auto dist = bfs_hops(graph, u);
    for (const NodeId v : partition.members(b)) {
      if (dist[v] < 0) {
        throw NumericError("clusters " + std::to_string(a) + " and " + std::to_string(b) +
                           " are disconnected");
      }
      best = std::max(best, static_cast<double>(dist[v]));
    }
  }
  return best;
}

std::vector<double> cluster_max_distance_row(const Graph& graph, const Partition& partition,
                                             ClusterId a, DistanceMode mode) {
  std::vector<double> row(static_cast<std::size_t>(partition.cluster_count()), 0.0);
  const std::int64_t n = graph.node_count();
  if (mode == DistanceMode::euclidean) {
    const auto& layout = graph.layout();
    for (const NodeId u : partition.members(a)) {
      for (NodeId v = 0; v < n; ++v) {
        double& slot = row[partition.cluster_of(v)];
        slot = std::max(slot, euclidean(layout[u], layout[v]));
      }
    }
    return row;
  }
  for (const NodeId u : partition.members(a)) {
    const auto dist = bfs_hops(graph, u);
    for (NodeId v = 0; v < n; ++v) {
      double& slot = row[partition.cluster_of(v)];
      slot = dist[v] < 0 ? std::numeric_limits<double>::infinity()
                         : std::max(slot, static_cast<double>(dist[v]));
    }
  }
  return row;
}

}  // namespace pathloc
