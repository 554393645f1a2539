#include "pathloc/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace pathloc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// log(e^a + e^b) with -inf as the additive identity.
double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// A positive quantity whose exponent underflows is reported as the smallest
// positive double; an empty sum stays 0.
double exp_positive(double log_value) {
  if (log_value == kNegInf) return 0.0;
  const double v = std::exp(log_value);
  return v > 0.0 ? v : std::numeric_limits<double>::denorm_min();
}

void check_truth(const SuperGraph& supergraph, std::span<const ClusterId> truth) {
  if (truth.empty()) throw ValidationError("bound: projected truth is empty");
  for (const ClusterId c : truth) {
    if (c < 0 || c >= supergraph.size()) throw ValidationError("bound: truth cluster out of range");
  }
}

std::vector<double> log_theta_per_cluster(const SuperGraph& supergraph, const ThetaTable& theta) {
  std::vector<double> out(static_cast<std::size_t>(supergraph.size()));
  for (ClusterId c = 0; c < supergraph.size(); ++c) out[c] = theta.log_theta(supergraph.cluster_size(c));
  return out;
}

std::vector<std::int64_t> truth_sizes(const SuperGraph& supergraph, std::span<const ClusterId> truth) {
  std::vector<std::int64_t> sizes;
  sizes.reserve(truth.size());
  for (const ClusterId c : truth) sizes.push_back(supergraph.cluster_size(c));
  return sizes;
}

// Evaluates delta T + sum_w g(w) M(w) for every delta = k / T and keeps the
// smallest minimizer. `extra[w]` is an additive per-w weight (f(T - w) for
// the fine bound, 0 otherwise).
void minimize_over_delta(std::span<const double> log_mass, std::span<const double> extra,
                         BoundReport& report) {
  const auto T = static_cast<std::int64_t>(log_mass.size()) - 1;
  double fixed = kNegInf;
  for (std::int64_t w = 0; w <= T; ++w) {
    if (extra[w] > 0.0) fixed = log_add(fixed, std::log(extra[w]) + log_mass[w]);
  }
  // suffix[k] = log sum_{w > k} w M(w)
  std::vector<double> suffix(static_cast<std::size_t>(T) + 1, kNegInf);
  for (std::int64_t k = T - 1; k >= 0; --k) {
    suffix[k] = log_add(suffix[k + 1], std::log(static_cast<double>(k + 1)) + log_mass[k + 1]);
  }
  report.delta_curve.assign(static_cast<std::size_t>(T) + 1, 0.0);
  std::int64_t best_k = 0;
  for (std::int64_t k = 0; k <= T; ++k) {
    report.delta_curve[k] = static_cast<double>(k) + exp_positive(log_add(suffix[k], fixed));
    if (report.delta_curve[k] < report.delta_curve[best_k]) best_k = k;
  }
  report.value = report.delta_curve[best_k];
  report.delta_star = static_cast<double>(best_k) / static_cast<double>(T);
  report.normalized_value = report.value / static_cast<double>(T);
}

}  // namespace

const char* bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::hamming_super: return "hammingSuper";
    case BoundKind::destination_super: return "destinationSuper";
    case BoundKind::hamming_fine: return "hammingFine";
    case BoundKind::destination_fine: return "destinationFine";
    case BoundKind::rgg_closed_form: return "rggClosedForm";
  }
  return "unknown";
}

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (const BoundKind k : {BoundKind::hamming_super, BoundKind::destination_super,
                            BoundKind::hamming_fine, BoundKind::destination_fine,
                            BoundKind::rgg_closed_form}) {
    if (name == bound_kind_name(k)) return k;
  }
  return std::nullopt;
}

std::string bound_report_json(const BoundReport& report) {
  nlohmann::ordered_json doc;
  doc["kind"] = bound_kind_name(report.kind);
  doc["value"] = report.value;
  doc["normalizedValue"] = report.normalized_value ? nlohmann::ordered_json(*report.normalized_value)
                                                   : nlohmann::ordered_json(nullptr);
  doc["deltaStar"] = report.delta_star ? nlohmann::ordered_json(*report.delta_star)
                                       : nlohmann::ordered_json(nullptr);
  doc["thetaParams"] = {{"mu", report.noise.mu},
                        {"sigma", report.noise.sigma},
                        {"s", theta_exponent(report.noise)}};
  doc["runtimeMs"] = report.runtime_ms;
  doc["configDigest"] = report.config_digest;
  if (report.kind == BoundKind::rgg_closed_form) doc["conditionHolds"] = report.condition_holds;
  return doc.dump();
}

double pairwise_path_bound(const ThetaTable& theta, std::span<const std::int64_t> sizes) {
  double log_sum = 0.0;
  for (const std::int64_t l : sizes) log_sum += theta.log_theta(l);
  return exp_positive(log_sum);
}

std::vector<double> first_k_sums(const ThetaTable& theta, std::span<const std::int64_t> true_sizes) {
  std::vector<double> values;
  values.reserve(true_sizes.size());
  for (const std::int64_t l : true_sizes) values.push_back(theta(l));
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<double> prefix(values.size() + 1, 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) prefix[k + 1] = prefix[k] + values[k];
  return prefix;
}

double first_k_sum(const ThetaTable& theta, std::span<const std::int64_t> true_sizes, std::int64_t k) {
  if (k < 0 || k > static_cast<std::int64_t>(true_sizes.size())) {
    throw ValidationError("first-k sum: k out of range");
  }
  return first_k_sums(theta, true_sizes)[k];
}

std::vector<double> hamming_log_mass(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                     const ThetaTable& theta) {
  check_truth(supergraph, truth);
  const std::int64_t m = supergraph.size();
  const auto T = static_cast<std::int64_t>(truth.size());
  const std::int64_t width = T + 1;
  const auto log_theta = log_theta_per_cluster(supergraph, theta);

  // cur[I * width + w] = log S_{tau, w}(I)
  std::vector<double> cur(static_cast<std::size_t>(m * width), kNegInf);
  std::vector<double> nxt(cur.size());
  std::vector<double> peak(static_cast<std::size_t>(width));
  std::vector<double> acc(static_cast<std::size_t>(width));
  for (ClusterId c = 0; c < m; ++c) {
    if (c == truth[0]) {
      cur[c * width] = 0.0;
    } else {
      cur[c * width + 1] = log_theta[c];
    }
  }
  for (std::int64_t tau = 1; tau < T; ++tau) {
    const std::int64_t wmax = tau;  // highest w present in the previous layer
    std::fill(nxt.begin(), nxt.end(), kNegInf);
    for (ClusterId c = 0; c < m; ++c) {
      const auto from = supergraph.transitions(c);
      if (from.empty()) continue;
      std::fill(peak.begin(), peak.begin() + wmax + 1, kNegInf);
      for (const ClusterId j : from) {
        const double* row = cur.data() + j * width;
        for (std::int64_t w = 0; w <= wmax; ++w) peak[w] = std::max(peak[w], row[w]);
      }
      std::fill(acc.begin(), acc.begin() + wmax + 1, 0.0);
      for (const ClusterId j : from) {
        const double* row = cur.data() + j * width;
        for (std::int64_t w = 0; w <= wmax; ++w) {
          if (row[w] != kNegInf) acc[w] += std::exp(row[w] - peak[w]);
        }
      }
      double* out = nxt.data() + c * width;
      const bool on_truth = c == truth[tau];
      for (std::int64_t w = 0; w <= wmax; ++w) {
        if (peak[w] == kNegInf) continue;
        const double log_sum = peak[w] + std::log(acc[w]);
        if (on_truth) {
          out[w] = log_sum;
        } else {
          out[w + 1] = log_sum + log_theta[c];
        }
      }
    }
    cur.swap(nxt);
  }
  std::vector<double> mass(static_cast<std::size_t>(width), kNegInf);
  for (ClusterId c = 0; c < m; ++c) {
    for (std::int64_t w = 0; w <= T; ++w) mass[w] = log_add(mass[w], cur[c * width + w]);
  }
  return mass;
}

std::vector<double> destination_log_mass(const SuperGraph& supergraph,
                                         std::span<const ClusterId> truth, const ThetaTable& theta) {
  check_truth(supergraph, truth);
  const std::int64_t m = supergraph.size();
  const auto log_theta = log_theta_per_cluster(supergraph, theta);
  std::vector<double> cur(static_cast<std::size_t>(m));
  std::vector<double> nxt(static_cast<std::size_t>(m));
  for (ClusterId c = 0; c < m; ++c) cur[c] = c == truth[0] ? 0.0 : log_theta[c];
  for (std::size_t tau = 1; tau < truth.size(); ++tau) {
    for (ClusterId c = 0; c < m; ++c) {
      double peak = kNegInf;
      for (const ClusterId j : supergraph.transitions(c)) peak = std::max(peak, cur[j]);
      if (peak == kNegInf) {
        nxt[c] = kNegInf;
        continue;
      }
      double acc = 0.0;
      for (const ClusterId j : supergraph.transitions(c)) {
        if (cur[j] != kNegInf) acc += std::exp(cur[j] - peak);
      }
      nxt[c] = peak + std::log(acc) + (c == truth[tau] ? 0.0 : log_theta[c]);
    }
    cur.swap(nxt);
  }
  return cur;
}

HammingBounds bound_hamming_both(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                 const ThetaTable& theta) {
  const auto start = Clock::now();
  const auto log_mass = hamming_log_mass(supergraph, truth, theta);
  const auto T = static_cast<std::int64_t>(truth.size());
  const auto sizes = truth_sizes(supergraph, truth);
  const auto f = first_k_sums(theta, sizes);
  const double mass_ms = elapsed_ms(start);

  HammingBounds out;
  std::vector<double> extra(static_cast<std::size_t>(T) + 1, 0.0);
  out.super.kind = BoundKind::hamming_super;
  out.super.horizon = T;
  out.super.noise = theta.noise();
  minimize_over_delta(log_mass, extra, out.super);
  out.super.runtime_ms = mass_ms;

  for (std::int64_t w = 0; w <= T; ++w) extra[w] = f[T - w];
  out.fine.kind = BoundKind::hamming_fine;
  out.fine.horizon = T;
  out.fine.noise = theta.noise();
  minimize_over_delta(log_mass, extra, out.fine);
  out.fine.runtime_ms = elapsed_ms(start);
  return out;
}

BoundReport bound_hamming_super(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                const ThetaTable& theta) {
  return bound_hamming_both(supergraph, truth, theta).super;
}

BoundReport bound_hamming_fine(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                               const ThetaTable& theta) {
  return bound_hamming_both(supergraph, truth, theta).fine;
}

std::vector<double> supergraph_distance_row(const SuperGraph& supergraph, ClusterId from,
                                            DistanceMode mode) {
  const std::int64_t m = supergraph.size();
  std::vector<double> row(static_cast<std::size_t>(m));
  if (mode == DistanceMode::hop) {
    const auto hops = bfs_hops(supergraph, from);
    for (ClusterId c = 0; c < m; ++c) {
      row[c] = hops[c] < 0 ? std::numeric_limits<double>::infinity() : static_cast<double>(hops[c]);
    }
    return row;
  }
  if (!supergraph.centroids()) {
    throw ValidationError("euclidean cluster distance requires a node layout");
  }
  const auto& centroid = *supergraph.centroids();
  for (ClusterId c = 0; c < m; ++c) row[c] = euclidean(centroid[from], centroid[c]);
  return row;
}

double destination_bound_value(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                               const ThetaTable& theta, std::span<const double> distance) {
  const auto log_mass = destination_log_mass(supergraph, truth, theta);
  double total = kNegInf;
  for (ClusterId c = 0; c < supergraph.size(); ++c) {
    if (log_mass[c] == kNegInf || distance[c] == 0.0) continue;
    if (!std::isfinite(distance[c])) {
      throw NumericError("bound: clusters " + std::to_string(truth.back()) + " and " +
                         std::to_string(c) + " are disconnected");
    }
    total = log_add(total, std::log(distance[c]) + log_mass[c]);
  }
  return exp_positive(total);
}

BoundReport bound_destination_super(const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                    const ThetaTable& theta, DistanceMode mode) {
  const auto start = Clock::now();
  check_truth(supergraph, truth);
  BoundReport report;
  report.kind = BoundKind::destination_super;
  report.horizon = static_cast<std::int64_t>(truth.size());
  report.noise = theta.noise();
  const auto distance = supergraph_distance_row(supergraph, truth.back(), mode);
  report.value = destination_bound_value(supergraph, truth, theta, distance);
  report.runtime_ms = elapsed_ms(start);
  return report;
}

BoundReport bound_destination_fine(const Graph& graph, const Partition& partition,
                                   const SuperGraph& supergraph, std::span<const ClusterId> truth,
                                   const ThetaTable& theta, DistanceMode mode) {
  const auto start = Clock::now();
  check_truth(supergraph, truth);
  BoundReport report;
  report.kind = BoundKind::destination_fine;
  report.horizon = static_cast<std::int64_t>(truth.size());
  report.noise = theta.noise();
  const auto distance = cluster_max_distance_row(graph, partition, truth.back(), mode);
  report.value = destination_bound_value(supergraph, truth, theta, distance);
  report.runtime_ms = elapsed_ms(start);
  return report;
}

double rgg_threshold_snr(std::int64_t max_cluster_size) {
  return 2.0 * std::sqrt(std::log(9.0 * static_cast<double>(max_cluster_size)));
}

BoundReport rgg_closed_form(const NoiseModel& noise, std::int64_t max_cluster_size, std::int64_t T) {
  noise.validate();
  if (max_cluster_size < 1) throw ValidationError("closed form: s_m must be at least 1");
  if (T < 1) throw ValidationError("closed form: T must be at least 1");
  BoundReport report;
  report.kind = BoundKind::rgg_closed_form;
  report.horizon = T;
  report.noise = noise;
  const double ratio = noise.mu / noise.sigma;
  report.value = 9.0 * std::exp(-ratio * ratio / 4.0) * static_cast<double>(max_cluster_size) *
                 static_cast<double>(T);
  report.normalized_value = report.value / static_cast<double>(T);
  report.condition_holds = ratio > rgg_threshold_snr(max_cluster_size);
  return report;
}

}  // namespace pathloc
