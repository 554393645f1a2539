#include "pathloc/decoder.hpp"

#include <algorithm>
#include <limits>

namespace pathloc {
namespace {

constexpr double kUnreachable = -std::numeric_limits<double>::infinity();

std::int64_t argmax_lowest(std::span<const double> row) {
  std::int64_t best = 0;
  for (std::int64_t v = 1; v < static_cast<std::int64_t>(row.size()); ++v) {
    if (row[v] > row[best]) best = v;
  }
  return best;
}

double chain_sum(const SignalMatrix& y, std::span<const std::int32_t> ids) {
  double sum = 0.0;
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(ids.size()); ++t) sum += y(t, ids[t]);
  return sum;
}

void check_series(std::int64_t states, const SignalMatrix& y) {
  if (y.rows() < 1) throw ValidationError("decoder: series has no timesteps");
  if (y.cols() != states) {
    throw ValidationError("decoder: series width " + std::to_string(y.cols()) +
                          " does not match " + std::to_string(states) + " states");
  }
}

// Viterbi over any adjacency exposing size() and sorted transitions(i).
template <class Adjacency>
std::vector<std::int32_t> viterbi_ids(const Adjacency& adjacency, const SignalMatrix& y) {
  const std::int64_t n = adjacency.size();
  check_series(n, y);
  const std::int64_t T = y.rows();
  std::vector<double> prev(y.row(0).begin(), y.row(0).end());
  std::vector<double> next(static_cast<std::size_t>(n));
  std::vector<std::int32_t> pred(static_cast<std::size_t>(n * (T - 1)), -1);

  for (std::int64_t t = 1; t < T; ++t) {
    const auto row = y.row(t);
    std::int32_t* back = pred.data() + (t - 1) * n;
    bool any = false;
    for (std::int32_t v = 0; v < n; ++v) {
      double best = kUnreachable;
      std::int32_t arg = -1;
      for (const std::int32_t u : adjacency.transitions(v)) {
        if (prev[u] > best) {
          best = prev[u];
          arg = u;
        }
      }
      back[v] = arg;
      if (arg < 0) {
        next[v] = kUnreachable;
      } else {
        next[v] = best + row[v];
        any = true;
      }
    }
    if (!any) {
      throw NumericError("decoder: every state is unreachable at t=" + std::to_string(t));
    }
    prev.swap(next);
  }

  std::vector<std::int32_t> ids(static_cast<std::size_t>(T));
  ids[T - 1] = static_cast<std::int32_t>(argmax_lowest(prev));
  for (std::int64_t t = T - 1; t > 0; --t) ids[t - 1] = pred[(t - 1) * n + ids[t]];
  return ids;
}

}  // namespace

ChainEstimate naive_argmax_chain(const Graph& graph, const SignalMatrix& y) {
  check_series(graph.node_count(), y);
  ChainEstimate chain;
  chain.level = Level::fine;
  chain.ids.resize(static_cast<std::size_t>(y.rows()));
  for (std::int64_t t = 0; t < y.rows(); ++t) {
    chain.ids[t] = static_cast<std::int32_t>(argmax_lowest(y.row(t)));
  }
  chain.sum_signal = chain_sum(y, chain.ids);
  chain.connected = true;
  for (std::size_t t = 1; t < chain.ids.size(); ++t) {
    chain.connected = chain.connected && graph.has_edge(chain.ids[t - 1], chain.ids[t]);
  }
  return chain;
}

ChainEstimate viterbi_max_sum_path(const Graph& graph, const SignalMatrix& y) {
  ChainEstimate chain;
  chain.level = Level::fine;
  chain.ids = viterbi_ids(graph, y);
  chain.sum_signal = chain_sum(y, chain.ids);
  chain.connected = true;
  return chain;
}

ChainEstimate coarse_viterbi(const SuperGraph& supergraph, const SignalMatrix& u) {
  ChainEstimate chain;
  chain.level = Level::coarse;
  chain.ids = viterbi_ids(supergraph, u);
  chain.sum_signal = chain_sum(u, chain.ids);
  chain.connected = true;
  return chain;
}

MultiscaleResult multiscale_from_coarse(const Graph& graph, const Partition& partition,
                                        const SuperGraph& supergraph, const SignalMatrix& y,
                                        const SignalMatrix& u) {
  check_series(graph.node_count(), y);
  MultiscaleResult out;
  out.coarse = coarse_viterbi(supergraph, u);
  ChainEstimate& fine = out.fine;
  fine.level = Level::fine;
  fine.ids.resize(static_cast<std::size_t>(y.rows()));
  for (std::int64_t t = 0; t < y.rows(); ++t) {
    const auto members = partition.members(out.coarse.ids[t]);
    NodeId best = members.front();
    for (const NodeId v : members) {
      if (y(t, v) > y(t, best)) best = v;
    }
    fine.ids[t] = best;
  }
  fine.sum_signal = chain_sum(y, fine.ids);
  fine.connected = true;
  for (std::size_t t = 1; t < fine.ids.size(); ++t) {
    fine.connected = fine.connected && graph.has_edge(fine.ids[t - 1], fine.ids[t]);
  }
  return out;
}

MultiscaleResult multiscale_viterbi(const Graph& graph, const Partition& partition,
                                    const SuperGraph& supergraph, const SignalMatrix& y) {
  return multiscale_from_coarse(graph, partition, supergraph, y,
                                coarsen_observations(y, partition));
}

MultipathResult multipath_multiscale(const Graph& graph, const Partition& partition,
                                     const SuperGraph& supergraph, const ObservationSeries& obs,
                                     std::int64_t k) {
  if (k < 1) throw ValidationError("multipath: k must be at least 1");
  obs.noise.validate();
  MultipathResult out;
  ObservationSeries residual = obs;
  for (std::int64_t round = 0; round < k; ++round) {
    out.rounds.push_back(multiscale_viterbi(graph, partition, supergraph, residual.values));
    if (round + 1 < k) residual = subtract_path_signal(residual, out.rounds.back().fine.ids, obs.noise.mu);
  }
  out.node_sets.resize(static_cast<std::size_t>(obs.horizon()));
  for (std::int64_t t = 0; t < obs.horizon(); ++t) {
    auto& set = out.node_sets[t];
    for (const auto& r : out.rounds) set.push_back(r.fine.ids[t]);
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return out;
}

namespace {

std::int64_t count_mismatches(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (a.size() != b.size()) {
    throw ValidationError("hamming: lengths differ (" + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
  std::int64_t d = 0;
  for (std::size_t t = 0; t < a.size(); ++t) d += a[t] != b[t] ? 1 : 0;
  return d;
}

}  // namespace

std::int64_t hamming_distance(const ChainEstimate& a, const ChainEstimate& b) {
  if (a.level != b.level) throw ValidationError("hamming: chains are at different levels");
  return count_mismatches(a.ids, b.ids);
}

std::int64_t hamming_distance(const ChainEstimate& a, const TruePath& truth) {
  if (a.level != Level::fine) throw ValidationError("hamming: coarse chain compared with a fine path");
  return count_mismatches(a.ids, truth.nodes);
}

std::int64_t hamming_distance(const ChainEstimate& a, std::span<const ClusterId> projected_truth) {
  if (a.level != Level::coarse) {
    throw ValidationError("hamming: fine chain compared with a projected path");
  }
  return count_mismatches(a.ids, projected_truth);
}

std::optional<double> destination_distance(const Graph& graph, const ChainEstimate& a,
                                           const TruePath& truth, DistanceMode mode) {
  if (a.level != Level::fine) throw ValidationError("destination: chain must be at the fine level");
  if (a.ids.empty() || truth.nodes.empty()) throw ValidationError("destination: empty chain");
  return node_distance(graph, a.ids.back(), truth.nodes.back(), mode);
}

double set_hamming_distance(std::span<const std::vector<NodeId>> truth_sets,
                            std::span<const std::vector<NodeId>> estimate_sets) {
  if (truth_sets.size() != estimate_sets.size()) throw ValidationError("set hamming: lengths differ");
  std::int64_t twice = 0;
  std::vector<NodeId> diff;
  for (std::size_t t = 0; t < truth_sets.size(); ++t) {
    diff.clear();
    std::set_symmetric_difference(truth_sets[t].begin(), truth_sets[t].end(),
                                  estimate_sets[t].begin(), estimate_sets[t].end(),
                                  std::back_inserter(diff));
    twice += static_cast<std::int64_t>(diff.size());
  }
  return static_cast<double>(twice) / 2.0;
}

std::vector<std::vector<NodeId>> node_sets(std::span<const TruePath> paths) {
  if (paths.empty()) return {};
  const std::int64_t T = paths.front().length();
  std::vector<std::vector<NodeId>> sets(static_cast<std::size_t>(T));
  for (const TruePath& p : paths) {
    if (p.length() != T) throw ValidationError("node sets: paths have different lengths");
    for (std::int64_t t = 0; t < T; ++t) sets[t].push_back(p.nodes[t]);
  }
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return sets;
}

}  // namespace pathloc
