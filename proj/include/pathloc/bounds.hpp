#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pathloc/graph.hpp"
#include "pathloc/partition.hpp"
#include "pathloc/theta.hpp"

namespace pathloc {

enum class BoundKind { hamming_super, destination_super, hamming_fine, destination_fine, rgg_closed_form };

const char* bound_kind_name(BoundKind kind);  // "hammingSuper", ...
std::optional<BoundKind> parse_bound_kind(std::string_view name);

struct BoundReport {
  BoundKind kind = BoundKind::hamming_super;
  std::int64_t horizon = 0;
  double value = 0.0;
  std::optional<double> normalized_value;  // hamming kinds: value / T
  std::optional<double> delta_star;        // hamming kinds: minimizing delta
  std::vector<double> delta_curve;         // hamming kinds: objective at delta = k / T
  NoiseModel noise;
  double runtime_ms = 0.0;
  std::string config_digest;
  bool condition_holds = true;             // rgg closed form only
};

// JSON object {kind, value, normalizedValue, deltaStar,
// thetaParams:{mu, sigma, s}, runtimeMs, configDigest}.
std::string bound_report_json(const BoundReport& report);

// Product of theta(|V_t|) over the given sizes, accumulated in log space.
double pairwise_path_bound(const ThetaTable& theta, std::span<const std::int64_t> sizes);

// f(0..T): f(k) is the sum of the k largest theta(|V*_t|).
std::vector<double> first_k_sums(const ThetaTable& theta, std::span<const std::int64_t> true_sizes);
double first_k_sum(const ThetaTable& theta, std::span<const std::int64_t> true_sizes, std::int64_t k);

// log M(w), w = 0..T: log of the summed theta products over all super-graph
// walks that differ from the projected truth at exactly w positions. -inf
// marks an empty class.
std::vector<double> hamming_log_mass(const SuperGraph& supergraph,
                                     std::span<const ClusterId> truth, const ThetaTable& theta);

// log S_T(I): log of the summed theta products over all walks ending at I.
std::vector<double> destination_log_mass(const SuperGraph& supergraph,
                                         std::span<const ClusterId> truth, const ThetaTable& theta);

BoundReport bound_hamming_super(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                const ThetaTable& theta);
BoundReport bound_hamming_fine(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                               const ThetaTable& theta);

struct HammingBounds {
  BoundReport super;
  BoundReport fine;
};
// Both Hamming bounds from one pass of the walk-mass recursion.
HammingBounds bound_hamming_both(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                 const ThetaTable& theta);

// Coarse metric: hop count in the super-graph, or Euclidean distance between
// cluster centroids.
std::vector<double> supergraph_distance_row(const SuperGraph& supergraph, ClusterId from,
                                            DistanceMode mode);

BoundReport bound_destination_super(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                    const ThetaTable& theta, DistanceMode mode);
BoundReport bound_destination_fine(const Graph& graph, const Partition& partition,
                                   const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                   const ThetaTable& theta, DistanceMode mode);

// Sum over final clusters of distance[I] * S_T(I). Throws NumericError when a
// cluster with positive mass has an infinite distance.
double destination_bound_value(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                               const ThetaTable& theta, std::span<const double> distance);

// 9 exp(-mu^2 / 4 sigma^2) s_m T; condition_holds reports mu/sigma > 2 sqrt(log 9 s_m).
BoundReport rgg_closed_form(const NoiseModel& noise, std::int64_t max_cluster_size, std::int64_t T);
double rgg_threshold_snr(std::int64_t max_cluster_size);

}  // namespace pathloc
