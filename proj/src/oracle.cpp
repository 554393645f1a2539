#include "pathloc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

namespace pathloc::oracle {

WalkSpace WalkSpace::fine(const Graph& graph) {
  WalkSpace s;
  s.n = graph.node_count();
  s.adj.assign(static_cast<std::size_t>(s.n * s.n), 0);
  for (const auto& [u, v] : graph.edges()) {
    s.adj[u * s.n + v] = 1;
    s.adj[v * s.n + u] = 1;
  }
  return s;
}

WalkSpace WalkSpace::coarse(const Graph& graph, const Partition& partition) {
  WalkSpace s;
  s.n = partition.cluster_count();
  s.adj.assign(static_cast<std::size_t>(s.n * s.n), 0);
  const auto assign = partition.assignment();
  for (const auto& [u, v] : graph.edges()) {
    s.adj[assign[u] * s.n + assign[v]] = 1;
    s.adj[assign[v] * s.n + assign[u]] = 1;
  }
  return s;
}

std::int64_t enumerate_connected_walks(const WalkSpace& space, std::int64_t T,
                                       const EnumerationBudget& budget,
                                       const std::function<void(std::span<const std::int32_t>)>& visit) {
  if (space.n > budget.max_nodes) {
    throw BudgetError("walk enumeration: " + std::to_string(space.n) + " states exceed the budget of " +
                      std::to_string(budget.max_nodes));
  }
  if (T < 1 || T > budget.max_T) {
    throw BudgetError("walk enumeration: T=" + std::to_string(T) + " outside 1.." +
                      std::to_string(budget.max_T));
  }
  std::vector<std::int32_t> walk(static_cast<std::size_t>(T));
  std::int64_t count = 0;
  std::function<void(std::int64_t)> extend = [&](std::int64_t t) {
    if (t == T) {
      if (++count > budget.max_walks) {
        throw BudgetError("walk enumeration: more than " + std::to_string(budget.max_walks) + " walks");
      }
      visit(walk);
      return;
    }
    for (std::int32_t v = 0; v < space.n; ++v) {
      if (t > 0 && !space.adjacent(walk[t - 1], v)) continue;
      walk[t] = v;
      extend(t + 1);
    }
  };
  extend(0);
  return count;
}

MaxSum brute_force_max_sum(const WalkSpace& space, const SignalMatrix& series,
                           const EnumerationBudget& budget) {
  if (series.cols() != space.n) throw ValidationError("brute force: series width mismatch");
  MaxSum best;
  best.sum = -std::numeric_limits<double>::infinity();
  enumerate_connected_walks(space, series.rows(), budget, [&](std::span<const std::int32_t> walk) {
    double sum = 0.0;
    for (std::size_t t = 0; t < walk.size(); ++t) sum += series(static_cast<std::int64_t>(t), walk[t]);
    if (sum > best.sum) {
      best.sum = sum;
      best.walk.assign(walk.begin(), walk.end());
    }
  });
  if (best.walk.empty()) throw NumericError("brute force: no connected walk exists");
  return best;
}

double exhaustive_first_k_sum(std::span<const double> values, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (n > 20) throw BudgetError("first-k oracle: too many values");
  if (k < 0 || k > n) throw ValidationError("first-k oracle: k out of range");
  double best = k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    double sum = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) sum += values[i];
    }
    best = std::max(best, sum);
  }
  return best;
}

std::vector<std::int64_t> all_pairs_hops(const WalkSpace& space) {
  const std::int64_t n = space.n;
  constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> d(static_cast<std::size_t>(n * n), kFar);
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) {
      if (a == b) {
        d[a * n + b] = 0;
      } else if (space.adjacent(a, b)) {
        d[a * n + b] = 1;
      }
    }
  }
  for (std::int64_t k = 0; k < n; ++k) {
    for (std::int64_t a = 0; a < n; ++a) {
      for (std::int64_t b = 0; b < n; ++b) {
        d[a * n + b] = std::min(d[a * n + b], d[a * n + k] + d[k * n + b]);
      }
    }
  }
  for (auto& x : d) {
    if (x >= kFar) x = -1;
  }
  return d;
}

namespace {

// Distance from the final true cluster to every cluster, per bound kind.
std::vector<double> destination_row(const Graph& graph, const Partition& partition,
                                    const WalkSpace& coarse, ClusterId from, BoundKind kind,
                                    DistanceMode mode) {
  const std::int64_t m = partition.cluster_count();
  const auto assign = partition.assignment();
  const std::int64_t n = graph.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> row(static_cast<std::size_t>(m), 0.0);

  if (kind == BoundKind::destination_super) {
    if (mode == DistanceMode::hop) {
      WalkSpace plain = coarse;
      for (std::int64_t c = 0; c < m; ++c) plain.adj[c * m + c] = 0;
      const auto hops = all_pairs_hops(plain);
      for (std::int64_t c = 0; c < m; ++c) {
        const std::int64_t h = hops[from * m + c];
        row[c] = h < 0 ? inf : static_cast<double>(h);
      }
      return row;
    }
    std::vector<double> cx(static_cast<std::size_t>(m), 0.0);
    std::vector<double> cy(static_cast<std::size_t>(m), 0.0);
    std::vector<double> count(static_cast<std::size_t>(m), 0.0);
    for (std::int64_t v = 0; v < n; ++v) {
      cx[assign[v]] += graph.layout()[v].x;
      cy[assign[v]] += graph.layout()[v].y;
      count[assign[v]] += 1.0;
    }
    for (std::int64_t c = 0; c < m; ++c) {
      const double dx = cx[from] / count[from] - cx[c] / count[c];
      const double dy = cy[from] / count[from] - cy[c] / count[c];
      row[c] = std::sqrt(dx * dx + dy * dy);
    }
    return row;
  }

  std::vector<std::int64_t> hops;
  if (mode == DistanceMode::hop) hops = all_pairs_hops(WalkSpace::fine(graph));
  for (std::int64_t a = 0; a < n; ++a) {
    if (assign[a] != from) continue;
    for (std::int64_t b = 0; b < n; ++b) {
      double d = 0.0;
      if (mode == DistanceMode::hop) {
        d = hops[a * n + b] < 0 ? inf : static_cast<double>(hops[a * n + b]);
      } else {
        const double dx = graph.layout()[a].x - graph.layout()[b].x;
        const double dy = graph.layout()[a].y - graph.layout()[b].y;
        d = std::sqrt(dx * dx + dy * dy);
      }
      row[assign[b]] = std::max(row[assign[b]], d);
    }
  }
  return row;
}

}  // namespace

BruteForceBound brute_force_bound(const Graph& graph, const Partition& partition,
                                  std::span<const ClusterId> truth, const ThetaTable& theta,
                                  BoundKind kind, DistanceMode mode,
                                  const EnumerationBudget& budget) {
  if (kind == BoundKind::rgg_closed_form) throw ValidationError("brute force: no walk sum for the closed form");
  const auto T = static_cast<std::int64_t>(truth.size());
  const WalkSpace space = WalkSpace::coarse(graph, partition);
  const std::int64_t m = space.n;

  std::vector<std::int64_t> size(static_cast<std::size_t>(m), 0);
  for (const ClusterId c : partition.assignment()) ++size[c];
  std::vector<double> log_theta(static_cast<std::size_t>(m));
  for (std::int64_t c = 0; c < m; ++c) log_theta[c] = std::log(theta(size[c]));

  std::vector<double> true_theta;
  for (const ClusterId c : truth) true_theta.push_back(theta(size[c]));
  std::vector<double> f(static_cast<std::size_t>(T) + 1);
  for (std::int64_t k = 0; k <= T; ++k) f[k] = exhaustive_first_k_sum(true_theta, k);

  const bool hamming = kind == BoundKind::hamming_super || kind == BoundKind::hamming_fine;
  std::vector<double> dist;
  if (!hamming) dist = destination_row(graph, partition, space, truth.back(), kind, mode);

  std::vector<long double> curve(static_cast<std::size_t>(T) + 1, 0.0L);
  long double destination = 0.0L;
  enumerate_connected_walks(space, T, budget, [&](std::span<const std::int32_t> walk) {
    double log_p = 0.0;
    std::int64_t w = 0;
    for (std::int64_t t = 0; t < T; ++t) {
      if (walk[t] != truth[t]) {
        log_p += log_theta[walk[t]];
        ++w;
      }
    }
    const long double p = std::exp(static_cast<long double>(log_p));
    if (hamming) {
      for (std::int64_t k = 0; k <= T; ++k) {
        if (w > k) curve[k] += static_cast<long double>(w) * p;
        if (kind == BoundKind::hamming_fine) curve[k] += static_cast<long double>(f[T - w]) * p;
      }
    } else {
      const double d = dist[walk[T - 1]];
      if (d == 0.0) return;
      if (!std::isfinite(d)) throw NumericError("brute force: disconnected destination clusters");
      destination += static_cast<long double>(d) * p;
    }
  });

  BruteForceBound out;
  if (!hamming) {
    out.value = static_cast<double>(destination);
    return out;
  }
  out.delta_curve.resize(curve.size());
  for (std::int64_t k = 0; k <= T; ++k) out.delta_curve[k] = static_cast<double>(k) + static_cast<double>(curve[k]);
  out.value = *std::min_element(out.delta_curve.begin(), out.delta_curve.end());
  return out;
}

Interval monte_carlo_exceedance(const NoiseModel& noise, std::span<const std::int64_t> true_sizes,
                                std::span<const std::int64_t> alt_sizes,
                                std::span<const bool> overlap, std::int64_t samples,
                                std::uint64_t seed) {
  if (true_sizes.size() != alt_sizes.size() || true_sizes.size() != overlap.size()) {
    throw ValidationError("exceedance: size lists differ in length");
  }
  if (samples < 10'000) throw ValidationError("exceedance: at least 10^4 samples are required");
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> z(0.0, noise.sigma);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    double on = 0.0;
    double alt = 0.0;
    for (std::size_t t = 0; t < true_sizes.size(); ++t) {
      double u = noise.mu + z(engine);
      for (std::int64_t j = 1; j < true_sizes[t]; ++j) u = std::max(u, z(engine));
      on += u;
      if (overlap[t]) {
        alt += u;
        continue;
      }
      double w = -std::numeric_limits<double>::infinity();
      for (std::int64_t j = 0; j < alt_sizes[t]; ++j) w = std::max(w, z(engine));
      alt += w;
    }
    if (alt >= on) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

Interval monte_carlo_mgf(double sigma, double s, std::int64_t l, std::int64_t samples,
                         std::uint64_t seed) {
  if (s * sigma > 3.0) {
    throw BudgetError("mgf estimate: s*sigma > 3 gives an estimator with unusable variance; use a smaller s");
  }
  if (l < 1 || samples < 2) throw ValidationError("mgf estimate: need l >= 1 and at least 2 samples");
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> z(0.0, sigma);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    double x = z(engine);
    for (std::int64_t j = 1; j < l; ++j) x = std::max(x, z(engine));
    const double e = std::exp(s * x);
    const double delta = e - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (e - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, 3.0 * std::sqrt(var / static_cast<double>(samples))};
}

std::vector<double> sample_on_cluster_max(const NoiseModel& noise, std::int64_t l,
                                          std::int64_t samples, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> z(0.0, noise.sigma);
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (double& x : out) {
    x = noise.mu + z(engine);
    for (std::int64_t j = 1; j < l; ++j) x = std::max(x, z(engine));
  }
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace pathloc::oracle
