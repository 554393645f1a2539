#pragma once

// Slow reference implementations for tests. Walks, adjacency, distances and
// sampling are computed here from raw edges and assignments; theta values are
// taken from the ThetaTable passed in.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pathloc/bounds.hpp"
#include "pathloc/graph.hpp"
#include "pathloc/partition.hpp"
#include "pathloc/signal.hpp"
#include "pathloc/theta.hpp"

namespace pathloc::oracle {

// Inputs beyond these limits are refused with BudgetError.
struct EnumerationBudget {
  std::int64_t max_nodes = 8;
  std::int64_t max_T = 6;
  std::int64_t max_walks = 1'000'000;
};

// Dense 0/1 adjacency matrix. Diagonal entries allow staying put.
struct WalkSpace {
  std::int64_t n = 0;
  std::vector<char> adj;

  bool adjacent(std::int64_t a, std::int64_t b) const { return adj[a * n + b] != 0; }

  // Fine level: the graph's edge list, no diagonal.
  static WalkSpace fine(const Graph& graph);
  // Coarse level from a scan of every fine edge; diagonal where an edge lies
  // inside one cluster.
  static WalkSpace coarse(const Graph& graph, const Partition& partition);
};

// Calls visit(walk) for every length-T walk, in lexicographic order. Returns
// the number of walks.
std::int64_t enumerate_connected_walks(const WalkSpace& space, std::int64_t T,
                                       const EnumerationBudget& budget,
                                       const std::function<void(std::span<const std::int32_t>)>& visit);

struct MaxSum {
  std::vector<std::int32_t> walk;  // lexicographically smallest maximizer
  double sum = 0.0;
};
MaxSum brute_force_max_sum(const WalkSpace& space, const SignalMatrix& series,
                           const EnumerationBudget& budget);

// Sum of the k largest values by scanning every subset of size k.
double exhaustive_first_k_sum(std::span<const double> values, std::int64_t k);

// Hop counts between all pairs by Floyd-Warshall; -1 when disconnected.
std::vector<std::int64_t> all_pairs_hops(const WalkSpace& space);

struct BruteForceBound {
  double value = 0.0;
  std::vector<double> delta_curve;  // hamming kinds, objective at delta = k / T
};

// Direct term-by-term evaluation of a bound over every coarse walk. Coarse
// distances are super-graph hops (Floyd-Warshall) or centroid distances;
// fine destination distances come from a scan of all member pairs.
BruteForceBound brute_force_bound(const Graph& graph, const Partition& partition,
                                  std::span<const ClusterId> truth, const ThetaTable& theta,
                                  BoundKind kind, DistanceMode mode,
                                  const EnumerationBudget& budget = {5, 6, 1'000'000});

struct Interval {
  double estimate = 0.0;
  double radius = 0.0;  // three standard errors
  double lower() const { return estimate - radius; }
  double upper() const { return estimate + radius; }
};

// Frequency of sum_t W_t >= sum_t U_t, where at each t U_t is the max of one
// N(mu, sigma^2) and true_sizes[t] - 1 N(0, sigma^2) draws and W_t is the max
// of alt_sizes[t] N(0, sigma^2) draws, or W_t = U_t where overlap[t].
Interval monte_carlo_exceedance(const NoiseModel& noise, std::span<const std::int64_t> true_sizes,
                                std::span<const std::int64_t> alt_sizes,
                                std::span<const bool> overlap, std::int64_t samples,
                                std::uint64_t seed);

// Mean of exp(s * max of l N(0, sigma^2) draws). Refuses s * sigma > 3,
// where the estimator's variance is too large for the sample sizes used.
Interval monte_carlo_mgf(double sigma, double s, std::int64_t l, std::int64_t samples,
                         std::uint64_t seed);

// Draws of max(N(mu, sigma^2), l - 1 draws of N(0, sigma^2)).
std::vector<double> sample_on_cluster_max(const NoiseModel& noise, std::int64_t l,
                                          std::int64_t samples, std::uint64_t seed);

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace pathloc::oracle
