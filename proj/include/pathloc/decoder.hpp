#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pathloc/graph.hpp"
#include "pathloc/partition.hpp"
#include "pathloc/path.hpp"
#include "pathloc/signal.hpp"

namespace pathloc {

enum class Level { fine, coarse };

struct ChainEstimate {
  std::vector<std::int32_t> ids;  // node ids (fine) or cluster ids (coarse)
  Level level = Level::fine;
  double sum_signal = 0.0;        // sum over t of the series at ids[t]
  bool connected = false;         // consecutive ids adjacent at this level

  std::int64_t length() const { return static_cast<std::int64_t>(ids.size()); }
};

// Independent per-row argmax, lowest id on ties.
ChainEstimate naive_argmax_chain(const Graph& graph, const SignalMatrix& y);

// Exact maximizer of the sum signal over connected walks of the fine graph.
// Ties: the predecessor and the final node with the lowest id win. States
// without a finite predecessor score are unreachable; NumericError when every
// state at some t is unreachable.
ChainEstimate viterbi_max_sum_path(const Graph& graph, const SignalMatrix& y);

// Same recursion on the super-graph; a cluster may repeat only when it has a
// self-loop.
ChainEstimate coarse_viterbi(const SuperGraph& supergraph, const SignalMatrix& u);

struct MultiscaleResult {
  ChainEstimate coarse;
  ChainEstimate fine;
};

// Coarse Viterbi on the max-coarsened series, then per-t argmax of y inside
// the chosen cluster (lowest id on ties). The fine chain is not forced to be
// connected.
MultiscaleResult multiscale_viterbi(const Graph& graph, const Partition& partition,
                                    const SuperGraph& supergraph, const SignalMatrix& y);

// Same as above with the coarse series already computed.
MultiscaleResult multiscale_from_coarse(const Graph& graph, const Partition& partition,
                                        const SuperGraph& supergraph, const SignalMatrix& y,
                                        const SignalMatrix& u);

struct MultipathResult {
  std::vector<MultiscaleResult> rounds;             // in order of discovery
  std::vector<std::vector<NodeId>> node_sets;       // per t, sorted and distinct
};

// k rounds of multiscale decoding, each followed by subtracting mu along the
// recovered fine chain.
MultipathResult multipath_multiscale(const Graph& graph, const Partition& partition,
                                     const SuperGraph& supergraph, const ObservationSeries& obs,
                                     std::int64_t k);

// Mismatched positions. Both sides must have the same length and level.
std::int64_t hamming_distance(const ChainEstimate& a, const ChainEstimate& b);
// Fine chain against the true node sequence.
std::int64_t hamming_distance(const ChainEstimate& a, const TruePath& truth);
// Coarse chain against the projected truth.
std::int64_t hamming_distance(const ChainEstimate& a, std::span<const ClusterId> projected_truth);

inline double normalized(std::int64_t distance, std::int64_t T) {
  return static_cast<double>(distance) / static_cast<double>(T);
}

// Distance between the final positions of a fine chain and the truth;
// nullopt for a disconnected pair in hop mode.
std::optional<double> destination_distance(const Graph& graph, const ChainEstimate& a,
                                           const TruePath& truth, DistanceMode mode);

// Per-t |truth set symmetric-difference estimate set| / 2, summed over t.
// Path identities are ignored.
double set_hamming_distance(std::span<const std::vector<NodeId>> truth_sets,
                            std::span<const std::vector<NodeId>> estimate_sets);

// Per-t distinct node sets of several equal-length paths.
std::vector<std::vector<NodeId>> node_sets(std::span<const TruePath> paths);

}  // namespace pathloc
