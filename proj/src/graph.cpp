#include "pathloc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "line_reader.hpp"
#include "pathloc/rng.hpp"

namespace pathloc {

double euclidean(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Graph Graph::from_edges(std::int64_t n, std::span<const Edge> edges,
                        std::optional<std::vector<Point>> layout,
                        std::optional<GraphOrigin> origin) {
  if (n < 0) throw ValidationError("graph: negative node count");
  if (n > INT32_MAX) throw ValidationError("graph: node count exceeds 32-bit ids");

  Graph g;
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ValidationError("graph: edge (" + std::to_string(u) + ", " +
                            std::to_string(v) + ") out of range for n=" + std::to_string(n));
    }
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    g.edges_.emplace_back(u, v);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : g.edges_) {
    ++degree[u];
    ++degree[v];
  }
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(static_cast<std::size_t>(g.offsets_[n]));
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : g.edges_) {
    g.targets_[cursor[u]++] = v;
    g.targets_[cursor[v]++] = u;
  }
  for (std::int64_t v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + g.offsets_[v], g.targets_.begin() + g.offsets_[v + 1]);
  }

  if (layout) {
    if (static_cast<std::int64_t>(layout->size()) != n) {
      throw ValidationError("graph: layout size does not match node count");
    }
    for (const Point& p : *layout) {
      if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
        throw ValidationError("graph: layout coordinate outside the unit square");
      }
    }
    g.layout_ = std::move(layout);
  }
  g.origin_ = std::move(origin);
  return g;
}

std::optional<double> node_distance(const Graph& graph, NodeId a, NodeId b, DistanceMode mode) {
  if (mode == DistanceMode::euclidean) return euclidean(graph.position(a), graph.position(b));
  const auto hops = hop_distance(graph, a, b);
  if (!hops) return std::nullopt;
  return static_cast<double>(*hops);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

const std::vector<Point>& Graph::layout() const {
  if (!layout_) throw ValidationError("graph has no layout");
  return *layout_;
}

void Graph::set_original_ids(std::vector<std::int64_t> ids) {
  if (static_cast<std::int64_t>(ids.size()) != node_count()) {
    throw ValidationError("graph: remap table size does not match node count");
  }
  original_ids_ = std::move(ids);
}

Graph load_edge_list(std::string_view text) {
  std::unordered_map<std::int64_t, NodeId> dense;
  std::vector<std::int64_t> labels;
  std::vector<Edge> edges;
  auto id_of = [&](std::int64_t label) {
    auto [it, inserted] = dense.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };
  detail::for_each_data_line(text, [&](std::size_t line_no, const std::vector<std::int64_t>& tokens) {
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected two node ids, got " + std::to_string(tokens.size()) +
                                    " tokens");
    }
    const NodeId u = id_of(tokens[0]);
    const NodeId v = id_of(tokens[1]);
    edges.emplace_back(u, v);
  });
  if (labels.empty()) throw ValidationError("edge list contains no nodes");
  GraphOrigin origin;
  origin.generator = "edge-list";
  Graph g = Graph::from_edges(static_cast<std::int64_t>(labels.size()), edges, std::nullopt, origin);
  g.set_original_ids(std::move(labels));
  return g;
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open edge list '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_edge_list(buffer.str());
}

Graph geometric_graph(std::vector<Point> positions, double radius,
                      std::optional<GraphOrigin> origin) {
  if (!(radius > 0.0)) throw ValidationError("geometric graph: radius must be positive");
  const auto n = static_cast<std::int64_t>(positions.size());
  const auto cells = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(1.0 / radius)));
  auto cell_of = [&](double c) {
    return std::min<std::int64_t>(cells - 1, static_cast<std::int64_t>(c * static_cast<double>(cells)));
  };
  std::vector<std::vector<NodeId>> bucket(static_cast<std::size_t>(cells * cells));
  for (NodeId v = 0; v < n; ++v) {
    bucket[cell_of(positions[v].x) + cells * cell_of(positions[v].y)].push_back(v);
  }
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    const std::int64_t cx = cell_of(positions[v].x);
    const std::int64_t cy = cell_of(positions[v].y);
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        const std::int64_t nx = cx + dx;
        const std::int64_t ny = cy + dy;
        if (nx < 0 || ny < 0 || nx >= cells || ny >= cells) continue;
        for (const NodeId w : bucket[nx + cells * ny]) {
          if (w <= v) continue;
          const double ddx = positions[v].x - positions[w].x;
          const double ddy = positions[v].y - positions[w].y;
          if (ddx * ddx + ddy * ddy <= r2) edges.emplace_back(v, w);
        }
      }
    }
  }
  return Graph::from_edges(n, edges, std::move(positions), std::move(origin));
}

Graph generate_rgg(const RggParams& params) {
  if (!(params.radius > 0.0 && params.radius < 1.0)) {
    throw ValidationError("rgg: radius must lie in (0, 1)");
  }
  if (params.fixed_n < 0 && !(params.intensity > 0.0)) {
    throw ValidationError("rgg: intensity must be positive");
  }
  Rng rng(params.seed);
  const std::int64_t n = params.fixed_n >= 0
                             ? params.fixed_n
                             : static_cast<std::int64_t>(rng.poisson(params.intensity));
  if (n == 0) throw ValidationError("rgg: generated graph is empty");
  std::vector<Point> positions(static_cast<std::size_t>(n));
  for (Point& p : positions) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  GraphOrigin origin;
  origin.generator = "rgg";
  origin.seed = params.seed;
  origin.intensity = params.intensity;
  origin.fixed_n = params.fixed_n;
  origin.radius = params.radius;
  return geometric_graph(std::move(positions), params.radius, origin);
}

Graph generate_hub_community(const HubCommunityParams& p) {
  if (p.communities < 1 || p.community_size < 2 || p.ring_degree < 2 || p.hubs < 0 ||
      p.hub_degree < 1) {
    throw ValidationError("hub-community: invalid parameters");
  }
  const std::int64_t body = p.communities * p.community_size;
  if (p.hub_degree > body) throw ValidationError("hub-community: hub degree exceeds node count");
  const std::int64_t n = body + p.hubs;
  std::vector<Edge> edges;
  const std::int64_t half = std::min(p.ring_degree / 2, (p.community_size - 1) / 2 + 1);
  for (std::int64_t c = 0; c < p.communities; ++c) {
    const std::int64_t base = c * p.community_size;
    for (std::int64_t i = 0; i < p.community_size; ++i) {
      for (std::int64_t k = 1; k <= half; ++k) {
        const std::int64_t j = (i + k) % p.community_size;
        edges.emplace_back(static_cast<NodeId>(base + i), static_cast<NodeId>(base + j));
      }
    }
  }
  Rng rng(p.seed);
  for (std::int64_t h = 0; h < p.hubs; ++h) {
    std::unordered_set<std::int64_t> chosen;
    while (static_cast<std::int64_t>(chosen.size()) < p.hub_degree) {
      chosen.insert(static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(body))));
    }
    std::vector<std::int64_t> sorted(chosen.begin(), chosen.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto v : sorted) edges.emplace_back(static_cast<NodeId>(body + h), static_cast<NodeId>(v));
  }
  GraphOrigin origin;
  origin.generator = "hub-community";
  origin.seed = p.seed;
  return Graph::from_edges(n, edges, std::nullopt, origin);
}

std::string graph_to_json(const Graph& graph) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["n"] = graph.node_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : graph.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  if (graph.has_layout()) {
    auto layout = nlohmann::ordered_json::array();
    for (const Point& p : graph.layout()) layout.push_back({p.x, p.y});
    doc["layout"] = std::move(layout);
  }
  if (graph.origin()) {
    const GraphOrigin& o = *graph.origin();
    nlohmann::ordered_json info;
    info["generator"] = o.generator;
    info["seed"] = o.seed;
    info["intensity"] = o.intensity;
    info["fixedN"] = o.fixed_n;
    info["radius"] = o.radius;
    doc["seedInfo"] = std::move(info);
  }
  return doc.dump();
}

Graph graph_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("graph json: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != 1) throw ValidationError("graph json: unsupported version");
    const auto n = doc.at("n").get<std::int64_t>();
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    std::optional<std::vector<Point>> layout;
    if (doc.contains("layout")) {
      layout.emplace();
      for (const auto& p : doc["layout"]) layout->push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    }
    std::optional<GraphOrigin> origin;
    if (doc.contains("seedInfo")) {
      const auto& info = doc["seedInfo"];
      origin.emplace();
      origin->generator = info.at("generator").get<std::string>();
      origin->seed = info.at("seed").get<std::uint64_t>();
      origin->intensity = info.at("intensity").get<double>();
      origin->fixed_n = info.at("fixedN").get<std::int64_t>();
      origin->radius = info.at("radius").get<double>();
    }
    return Graph::from_edges(n, edges, std::move(layout), std::move(origin));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("graph json: ") + e.what());
  }
}

}  // namespace pathloc
