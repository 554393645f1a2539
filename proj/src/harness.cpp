#include "pathloc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>
#include <tuple>

#include "pathloc/path.hpp"
#include "pathloc/rng.hpp"
#include "pathloc/signal.hpp"

namespace pathloc {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* distance_name(DistanceMode mode) {
  return mode == DistanceMode::euclidean ? "euclidean" : "hop";
}

DistanceMode parse_distance(const std::string& name) {
  if (name == "euclidean") return DistanceMode::euclidean;
  if (name == "hop") return DistanceMode::hop;
  throw ValidationError("unknown distance mode '" + name + "'");
}

// Copies doc[key] into out when present.
template <class T>
void take(const nlohmann::json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

void reject_unknown(const nlohmann::json& doc, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& item : doc.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return item.key() == k; }) ==
        known.end()) {
      throw ValidationError("config: unknown key '" + item.key() + "' in " + where);
    }
  }
}

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(10) << x;
  return out.str();
}

}  // namespace

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json graph;
  graph["source"] = c.graph.source;
  graph["n"] = c.graph.n;
  graph["intensity"] = c.graph.intensity;
  graph["radius"] = c.graph.radius;
  graph["seed"] = c.graph.seed;
  graph["communities"] = c.graph.hub.communities;
  graph["communitySize"] = c.graph.hub.community_size;
  graph["ringDegree"] = c.graph.hub.ring_degree;
  graph["hubs"] = c.graph.hub.hubs;
  graph["hubDegree"] = c.graph.hub.hub_degree;
  graph["path"] = c.graph.path;

  nlohmann::ordered_json partition;
  partition["method"] = c.partition.method;
  partition["squares"] = c.partition.squares;
  partition["hubsPerRound"] = c.partition.hub.hubs_per_round;
  partition["maxClusterSize"] = c.partition.hub.max_cluster_size;
  partition["path"] = c.partition.path;

  nlohmann::ordered_json doc;
  doc["graph"] = std::move(graph);
  doc["partition"] = std::move(partition);
  doc["T"] = c.T;
  doc["trials"] = c.trials;
  doc["snr"] = c.snr;
  doc["sigma"] = c.sigma;
  doc["seed"] = c.seed;
  doc["decoder"] = c.decoder;
  doc["distance"] = distance_name(c.distance);
  doc["bounds"] = c.bounds;
  doc["paths"] = c.paths;
  doc["targetMetric"] = c.target_metric;
  doc["target"] = c.target;
  doc["resolution"] = c.resolution;
  doc["snrLow"] = c.snr_low;
  doc["snrHigh"] = c.snr_high;
  doc["boundTrials"] = c.bound_trials;
  doc["warmup"] = c.warmup;
  doc["repetitions"] = c.repetitions;
  return doc;
}

ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig c) {
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  try {
    reject_unknown(doc,
                   {"graph", "partition", "T", "trials", "snr", "sigma", "seed", "decoder",
                    "distance", "bounds", "paths", "targetMetric", "target", "resolution", "snrLow",
                    "snrHigh", "boundTrials", "warmup", "repetitions", "outDir", "threads"},
                   "config");
    if (doc.contains("graph")) {
      const auto& g = doc.at("graph");
      reject_unknown(g,
                     {"source", "n", "intensity", "radius", "seed", "communities", "communitySize",
                      "ringDegree", "hubs", "hubDegree", "path"},
                     "graph");
      take(g, "source", c.graph.source);
      take(g, "n", c.graph.n);
      take(g, "intensity", c.graph.intensity);
      take(g, "radius", c.graph.radius);
      take(g, "seed", c.graph.seed);
      take(g, "communities", c.graph.hub.communities);
      take(g, "communitySize", c.graph.hub.community_size);
      take(g, "ringDegree", c.graph.hub.ring_degree);
      take(g, "hubs", c.graph.hub.hubs);
      take(g, "hubDegree", c.graph.hub.hub_degree);
      take(g, "path", c.graph.path);
    }
    if (doc.contains("partition")) {
      const auto& p = doc.at("partition");
      reject_unknown(p, {"method", "squares", "hubsPerRound", "maxClusterSize", "path"}, "partition");
      take(p, "method", c.partition.method);
      take(p, "squares", c.partition.squares);
      take(p, "hubsPerRound", c.partition.hub.hubs_per_round);
      take(p, "maxClusterSize", c.partition.hub.max_cluster_size);
      take(p, "path", c.partition.path);
    }
    take(doc, "T", c.T);
    take(doc, "trials", c.trials);
    take(doc, "snr", c.snr);
    take(doc, "sigma", c.sigma);
    take(doc, "seed", c.seed);
    take(doc, "decoder", c.decoder);
    if (doc.contains("distance")) c.distance = parse_distance(doc.at("distance").get<std::string>());
    take(doc, "bounds", c.bounds);
    take(doc, "paths", c.paths);
    take(doc, "targetMetric", c.target_metric);
    take(doc, "target", c.target);
    take(doc, "resolution", c.resolution);
    take(doc, "snrLow", c.snr_low);
    take(doc, "snrHigh", c.snr_high);
    take(doc, "boundTrials", c.bound_trials);
    take(doc, "warmup", c.warmup);
    take(doc, "repetitions", c.repetitions);
    take(doc, "outDir", c.out_dir);
    take(doc, "threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

std::string config_digest(const ExperimentConfig& config) {
  const std::string text = config_to_json(config).dump();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

Graph build_graph(const GraphSpec& spec) {
  if (spec.source == "rgg") {
    RggParams p;
    p.fixed_n = spec.n;
    p.intensity = spec.intensity;
    p.radius = spec.radius;
    p.seed = spec.seed;
    return generate_rgg(p);
  }
  if (spec.source == "hub-community") {
    HubCommunityParams p = spec.hub;
    p.seed = spec.seed;
    return generate_hub_community(p);
  }
  if (spec.source == "edge-list") return load_edge_list_file(spec.path);
  if (spec.source == "json") return graph_from_json(read_text(spec.path));
  throw ValidationError("unknown graph source '" + spec.source + "'");
}

std::vector<NamedCoarsening> build_partitions(const Graph& graph, const PartitionSpec& spec) {
  std::vector<NamedCoarsening> out;
  auto timed = [&](auto&& make) {
    const auto start = Clock::now();
    Coarsening c = make();
    out.push_back({std::move(c), elapsed_ms(start)});
  };
  if (spec.method == "square") {
    if (spec.squares.empty()) throw ValidationError("square partition: no square counts given");
    for (const std::int64_t b : spec.squares) timed([&] { return square_partition(graph, b); });
  } else if (spec.method == "hub-shatter") {
    timed([&] { return hub_shatter_partition(graph, spec.hub); });
  } else if (spec.method == "file") {
    const std::string text = read_text(spec.path);
    timed([&] { return import_partition(text, graph); });
  } else if (spec.method == "identity") {
    timed([&] {
      std::vector<std::int64_t> labels(static_cast<std::size_t>(graph.node_count()));
      for (std::int64_t v = 0; v < graph.node_count(); ++v) labels[v] = v;
      Coarsening c;
      c.partition = Partition::from_labels(labels);
      c.supergraph = build_supergraph(graph, c.partition);
      return c;
    });
  } else {
    throw ValidationError("unknown partition method '" + spec.method + "'");
  }
  return out;
}

void parallel_for(std::int64_t count, std::int64_t threads,
                  const std::function<void(std::int64_t)>& body) {
  if (threads <= 0) threads = std::max<std::int64_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::vector<std::thread> workers;
  for (std::int64_t w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::int64_t i = w; i < count; i += threads) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Stat summarize(const std::vector<double>& xs) {
  Stat s;
  s.count = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return s;
  double sum = 0.0;
  for (const double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (const double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return s;
}

DecoderKind parse_decoder(const std::string& name) {
  if (name == "multiscale") return DecoderKind::multiscale;
  if (name == "exact") return DecoderKind::exact;
  if (name == "naive") return DecoderKind::naive;
  throw ValidationError("unknown decoder '" + name + "'");
}

std::uint64_t trial_path_seed(std::uint64_t seed, std::int64_t trial, std::int64_t path_index) {
  return split_seed(split_seed(seed, 2 * static_cast<std::uint64_t>(trial)),
                    static_cast<std::uint64_t>(path_index));
}

std::uint64_t trial_noise_seed(std::uint64_t seed, std::int64_t trial) {
  return split_seed(seed, 2 * static_cast<std::uint64_t>(trial) + 1);
}

TrialOutcome run_trial(const Scenario& sc, double snr, std::int64_t trial, DecoderKind decoder,
                       const ThetaTable* bounds_theta) {
  const Graph& graph = *sc.graph;
  const Partition& partition = sc.coarsening->partition;
  const SuperGraph& supergraph = sc.coarsening->supergraph;
  const TruePath truth = random_walk_path(graph, sc.T, trial_path_seed(sc.seed, trial));
  const NoiseModel noise{snr * sc.sigma, sc.sigma};
  const ObservationSeries obs =
      synthesize_observations(graph, std::span<const TruePath>(&truth, 1), noise,
                              trial_noise_seed(sc.seed, trial));
  const auto projected = truth.projected(partition);

  ChainEstimate coarse;
  ChainEstimate fine;
  double decode_ms = 0.0;
  if (decoder == DecoderKind::multiscale) {
    const SignalMatrix u = coarsen_observations(obs.values, partition);
    const auto start = Clock::now();
    auto result = multiscale_from_coarse(graph, partition, supergraph, obs.values, u);
    decode_ms = elapsed_ms(start);
    coarse = std::move(result.coarse);
    fine = std::move(result.fine);
  } else {
    const auto start = Clock::now();
    fine = decoder == DecoderKind::exact ? viterbi_max_sum_path(graph, obs.values)
                                         : naive_argmax_chain(graph, obs.values);
    decode_ms = elapsed_ms(start);
    coarse.level = Level::coarse;
    coarse.ids = project(fine.ids, partition);
  }

  TrialOutcome out;
  out.trial = trial;
  const std::int64_t dc = hamming_distance(coarse, projected);
  const std::int64_t df = hamming_distance(fine, truth);
  out.hamming_coarse = normalized(dc, sc.T);
  out.hamming_fine = normalized(df, sc.T);
  out.coarse_lower_bound_holds = dc <= df;
  out.fine_connected = fine.connected;
  const auto dest = destination_distance(graph, fine, truth, sc.distance);
  if (!dest) throw NumericError("destination: estimate and truth lie in different components");
  out.destination = *dest;
  out.decode_step_ms = decode_ms / static_cast<double>(sc.T);

  if (bounds_theta) {
    const auto hb = bound_hamming_both(supergraph, projected, *bounds_theta);
    out.bound_hamming_fine = *hb.fine.normalized_value;
    out.bound_hamming_super = *hb.super.normalized_value;
    out.bound_dest_fine =
        bound_destination_fine(graph, partition, supergraph, projected, *bounds_theta, sc.distance).value;
  }
  return out;
}

SweepRow evaluate_point(const Scenario& sc, double snr, std::int64_t trials, DecoderKind decoder,
                        bool with_bounds, std::int64_t threads) {
  if (trials < 1) throw ValidationError("sweep: trials must be at least 1");
  std::optional<ThetaTable> theta;
  if (with_bounds) theta.emplace(NoiseModel{snr * sc.sigma, sc.sigma});
  SweepRow row;
  row.m = sc.coarsening->partition.cluster_count();
  row.snr = snr;
  row.trials = trials;
  row.outcomes.resize(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t i) {
    row.outcomes[i] = run_trial(sc, snr, i, decoder, theta ? &*theta : nullptr);
  });
  std::vector<double> hc, hf, dest, step, bh, bd;
  for (const auto& o : row.outcomes) {
    hc.push_back(o.hamming_coarse);
    hf.push_back(o.hamming_fine);
    dest.push_back(o.destination);
    step.push_back(o.decode_step_ms);
    if (o.bound_hamming_fine) bh.push_back(*o.bound_hamming_fine);
    if (o.bound_dest_fine) bd.push_back(*o.bound_dest_fine);
  }
  row.hamming_coarse = summarize(hc);
  row.hamming_fine = summarize(hf);
  row.destination = summarize(dest);
  row.decode_step_ms = median(step);
  if (!bh.empty()) row.bound_hamming_fine = summarize(bh).mean;
  if (!bd.empty()) row.bound_dest_fine = summarize(bd).mean;
  return row;
}

std::string sweep_csv_header() {
  return "m,snr,trials,hammingCoarseMean,hammingCoarseStderr,hammingFineMean,hammingFineStderr,"
         "destMean,destStderr,boundHammingFine,boundDestFine,decodeStepMs,configDigest";
}

std::string sweep_csv_row(const SweepRow& r) {
  std::ostringstream out;
  out << r.m << ',' << format_double(r.snr) << ',' << r.trials << ','
      << format_double(r.hamming_coarse.mean) << ',' << format_double(r.hamming_coarse.std_error) << ','
      << format_double(r.hamming_fine.mean) << ',' << format_double(r.hamming_fine.std_error) << ','
      << format_double(r.destination.mean) << ',' << format_double(r.destination.std_error) << ','
      << format_double(r.bound_hamming_fine) << ',' << format_double(r.bound_dest_fine) << ','
      << format_double(r.decode_step_ms) << ',' << r.config_digest;
  return out.str();
}

ThresholdResult find_threshold(const Scenario& sc, const ExperimentConfig& config) {
  const bool hamming = config.target_metric == "hamming";
  if (!hamming && config.target_metric != "destination") {
    throw ValidationError("threshold: target metric must be hamming or destination");
  }
  if (!(config.snr_low < config.snr_high)) throw ValidationError("threshold: snrLow must be below snrHigh");
  if (!(config.resolution > 0.0)) throw ValidationError("threshold: resolution must be positive");
  const DecoderKind decoder = parse_decoder(config.decoder);

  ThresholdResult result;
  result.m = sc.coarsening->partition.cluster_count();
  std::vector<std::tuple<double, double, double>> points;  // snr, mean, stderr
  std::vector<double> step_ms;
  auto metric = [&](double snr) {
    const SweepRow row = evaluate_point(sc, snr, config.trials, decoder, false, config.threads);
    const Stat& s = hamming ? row.hamming_fine : row.destination;
    points.emplace_back(snr, s.mean, s.std_error);
    result.evaluated.emplace_back(snr, s.mean);
    step_ms.push_back(row.decode_step_ms);
    for (const auto& o : row.outcomes) {
      result.all_coarse_lower_bounds_hold = result.all_coarse_lower_bounds_hold && o.coarse_lower_bound_holds;
    }
    return s.mean;
  };

  double lo = config.snr_low;
  double hi = config.snr_high;
  if (metric(lo) <= config.target || metric(hi) > config.target) {
    throw NumericError("threshold: the SNR bracket [" + format_double(lo) + ", " + format_double(hi) +
                       "] does not straddle the target; widen it or run more trials");
  }
  while (hi - lo > config.resolution) {
    const double mid = 0.5 * (lo + hi);
    if (metric(mid) <= config.target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.simulated = hi;
  result.decode_step_ms = median(step_ms);

  std::sort(points.begin(), points.end());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const auto [si, mi, ei] = points[i];
      const auto [sj, mj, ej] = points[j];
      if (mj > mi + 3.0 * std::sqrt(ei * ei + ej * ej) + 1e-12) {
        throw NumericError("threshold: error rises from " + format_double(mi) + " at SNR " +
                           format_double(si) + " to " + format_double(mj) + " at SNR " +
                           format_double(sj) + "; run more trials");
      }
    }
  }

  // Bound-implied threshold on the first few truths.
  const std::int64_t bt = std::max<std::int64_t>(1, std::min(config.bound_trials, config.trials));
  const Graph& graph = *sc.graph;
  const Partition& partition = sc.coarsening->partition;
  std::vector<std::vector<ClusterId>> truths;
  for (std::int64_t i = 0; i < bt; ++i) {
    truths.push_back(random_walk_path(graph, sc.T, trial_path_seed(sc.seed, i)).projected(partition));
  }
  auto bound_at = [&](double snr) {
    const ThetaTable theta(NoiseModel{snr * sc.sigma, sc.sigma});
    double sum = 0.0;
    for (const auto& truth : truths) {
      sum += hamming ? *bound_hamming_fine(sc.coarsening->supergraph, truth, theta).normalized_value
                     : bound_destination_fine(graph, partition, sc.coarsening->supergraph, truth, theta,
                                              sc.distance)
                           .value;
    }
    return sum / static_cast<double>(truths.size());
  };
  double blo = config.snr_low;
  double bhi = config.snr_high;
  if (bound_at(bhi) <= config.target) {
    if (bound_at(blo) <= config.target) {
      result.bound_implied = blo;
    } else {
      while (bhi - blo > config.resolution) {
        const double mid = 0.5 * (blo + bhi);
        if (bound_at(mid) <= config.target) {
          bhi = mid;
        } else {
          blo = mid;
        }
      }
      result.bound_implied = bhi;
    }
  }
  return result;
}

std::string threshold_csv_header() {
  return "m,metric,target,simulatedThreshold,boundThreshold,trials,decodeStepMs,configDigest";
}

std::string threshold_csv_row(const ThresholdResult& r, const ExperimentConfig& config,
                              const std::string& digest) {
  std::ostringstream out;
  out << r.m << ',' << config.target_metric << ',' << format_double(config.target) << ','
      << format_double(r.simulated) << ',' << format_double(r.bound_implied) << ',' << config.trials
      << ',' << format_double(r.decode_step_ms) << ',' << digest;
  return out.str();
}

BenchmarkResult run_benchmark(const Graph& graph, const NamedCoarsening& named, std::int64_t T,
                              double snr, std::uint64_t seed, std::int64_t warmup,
                              std::int64_t repetitions) {
  if (repetitions < 1) throw ValidationError("benchmark: repetitions must be at least 1");
  const Partition& partition = named.coarsening.partition;
  const SuperGraph& supergraph = named.coarsening.supergraph;
  const TruePath truth = random_walk_path(graph, T, trial_path_seed(seed, 0));
  const ObservationSeries obs = synthesize_observations(
      graph, std::span<const TruePath>(&truth, 1), NoiseModel{snr, 1.0}, trial_noise_seed(seed, 0));

  auto time_median = [&](auto&& fn) {
    for (std::int64_t i = 0; i < warmup; ++i) fn();
    std::vector<double> ms;
    for (std::int64_t i = 0; i < repetitions; ++i) {
      const auto start = Clock::now();
      fn();
      ms.push_back(elapsed_ms(start));
    }
    return median(ms);
  };

  volatile double sink = 0.0;
  const double exact_ms = time_median([&] { sink = sink + viterbi_max_sum_path(graph, obs.values).sum_signal; });
  SignalMatrix u;
  const double coarsen_ms = time_median([&] { u = coarsen_observations(obs.values, partition); });
  const double multi_ms = time_median([&] {
    sink = sink + multiscale_from_coarse(graph, partition, supergraph, obs.values, u).fine.sum_signal;
  });

  BenchmarkResult r;
  r.n = graph.node_count();
  r.edges = graph.edge_count();
  r.m = partition.cluster_count();
  r.super_edges = supergraph.edge_count();
  r.T = T;
  r.partition_ms = named.partition_ms;
  const double dt = static_cast<double>(T);
  r.exact_step_ms = exact_ms / dt;
  r.multiscale_step_ms = multi_ms / dt;
  r.coarsen_step_ms = coarsen_ms / dt;
  r.exact_total_ms = exact_ms;
  r.multiscale_total_ms = named.partition_ms + coarsen_ms + multi_ms;
  r.step_speedup = r.exact_step_ms / r.multiscale_step_ms;
  r.total_speedup = r.exact_total_ms / r.multiscale_total_ms;
  return r;
}

std::string benchmark_csv_header() {
  return "n,edges,m,superEdges,T,partitionMs,exactStepMs,multiscaleStepMs,coarsenStepMs,"
         "exactTotalMs,multiscaleTotalMs,stepSpeedup,totalSpeedup,configDigest";
}

std::string benchmark_csv_row(const BenchmarkResult& r, const std::string& digest) {
  std::ostringstream out;
  out << r.n << ',' << r.edges << ',' << r.m << ',' << r.super_edges << ',' << r.T << ','
      << format_double(r.partition_ms) << ',' << format_double(r.exact_step_ms) << ','
      << format_double(r.multiscale_step_ms) << ',' << format_double(r.coarsen_step_ms) << ','
      << format_double(r.exact_total_ms) << ',' << format_double(r.multiscale_total_ms) << ','
      << format_double(r.step_speedup) << ',' << format_double(r.total_speedup) << ',' << digest;
  return out.str();
}

MultipathRow evaluate_multipath(const Scenario& sc, double snr, std::int64_t k, std::int64_t trials,
                                std::int64_t threads) {
  if (k < 1) throw ValidationError("multipath: k must be at least 1");
  const Graph& graph = *sc.graph;
  const Partition& partition = sc.coarsening->partition;
  std::vector<double> distance(static_cast<std::size_t>(trials));
  std::vector<char> lower(static_cast<std::size_t>(trials), 1);
  parallel_for(trials, threads, [&](std::int64_t i) {
    std::vector<TruePath> paths;
    for (std::int64_t j = 0; j < k; ++j) paths.push_back(random_walk_path(graph, sc.T, trial_path_seed(sc.seed, i, j)));
    const ObservationSeries obs =
        synthesize_observations(graph, paths, NoiseModel{snr * sc.sigma, sc.sigma}, trial_noise_seed(sc.seed, i));
    const MultipathResult result = multipath_multiscale(graph, partition, sc.coarsening->supergraph, obs, k);
    distance[i] = set_hamming_distance(node_sets(paths), result.node_sets) /
                  static_cast<double>(sc.T * k);
    if (k == 1) {
      const auto& first = result.rounds.front();
      lower[i] = hamming_distance(first.coarse, paths[0].projected(partition)) <=
                 hamming_distance(first.fine, paths[0]);
    }
  });
  MultipathRow row;
  row.k = k;
  row.snr = snr;
  row.trials = trials;
  row.set_hamming = summarize(distance);
  row.coarse_lower_bounds.assign(lower.begin(), lower.end());
  return row;
}

std::string multipath_csv_header() { return "k,snr,trials,setHammingMean,setHammingStderr,configDigest"; }

std::string multipath_csv_row(const MultipathRow& r) {
  std::ostringstream out;
  out << r.k << ',' << format_double(r.snr) << ',' << r.trials << ','
      << format_double(r.set_hamming.mean) << ',' << format_double(r.set_hamming.std_error) << ','
      << r.config_digest;
  return out.str();
}

}  // namespace pathloc
