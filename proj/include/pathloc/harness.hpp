#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathloc/bounds.hpp"
#include "pathloc/decoder.hpp"
#include "pathloc/graph.hpp"
#include "pathloc/partition.hpp"

namespace pathloc {

struct GraphSpec {
  std::string source = "rgg";  // rgg | hub-community | edge-list | json
  std::int64_t n = 2000;       // rgg: fixed node count; -1 selects Poisson mode
  double intensity = 2000.0;   // rgg Poisson mean
  double radius = 0.06;
  std::uint64_t seed = 1;
  HubCommunityParams hub;
  std::string path;            // edge-list | json
};

struct PartitionSpec {
  std::string method = "square";  // square | hub-shatter | file | identity
  std::vector<std::int64_t> squares{10};
  HubShatterParams hub;
  std::string path;
};

struct ExperimentConfig {
  GraphSpec graph;
  PartitionSpec partition;
  std::int64_t T = 100;
  std::int64_t trials = 50;
  std::vector<double> snr{4.0};   // mu / sigma
  double sigma = 1.0;
  std::uint64_t seed = 1;
  std::string decoder = "multiscale";  // multiscale | exact | naive
  DistanceMode distance = DistanceMode::euclidean;
  bool bounds = false;
  std::vector<std::int64_t> paths{1};  // multipath k values
  std::string target_metric = "hamming";  // hamming | destination
  double target = 0.05;
  double resolution = 0.05;
  double snr_low = 0.5;
  double snr_high = 12.0;
  std::int64_t bound_trials = 5;
  std::int64_t warmup = 1;
  std::int64_t repetitions = 5;
  std::string out_dir = ".";
  std::int64_t threads = 1;
};

// Canonical JSON with a fixed field order. out_dir and threads are omitted
// because they do not affect results.
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
// Overlays the fields present in `doc` onto `base`; unknown keys are errors.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});
// FNV-1a 64 of the canonical JSON text, as 16 hex digits.
std::string config_digest(const ExperimentConfig& config);

Graph build_graph(const GraphSpec& spec);

struct NamedCoarsening {
  Coarsening coarsening;
  double partition_ms = 0.0;
};
// One coarsening per requested square count, or a single one for the other
// methods.
std::vector<NamedCoarsening> build_partitions(const Graph& graph, const PartitionSpec& spec);

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception by index is rethrown after all workers finish.
void parallel_for(std::int64_t count, std::int64_t threads,
                  const std::function<void(std::int64_t)>& body);

struct Stat {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t count = 0;
};
Stat summarize(const std::vector<double>& xs);

enum class DecoderKind { multiscale, exact, naive };
DecoderKind parse_decoder(const std::string& name);

struct Scenario {
  const Graph* graph = nullptr;
  const Coarsening* coarsening = nullptr;
  std::int64_t T = 100;
  double sigma = 1.0;
  std::uint64_t seed = 1;
  DistanceMode distance = DistanceMode::euclidean;
};

// Seeds of trial i: the walk depends only on (seed, i, path index) and the
// noise only on (seed, i), so points that differ in SNR or partition share
// random numbers.
std::uint64_t trial_path_seed(std::uint64_t seed, std::int64_t trial, std::int64_t path_index = 0);
std::uint64_t trial_noise_seed(std::uint64_t seed, std::int64_t trial);

struct TrialOutcome {
  std::int64_t trial = 0;
  double hamming_coarse = 0.0;  // normalized by T
  double hamming_fine = 0.0;    // normalized by T
  double destination = 0.0;
  bool fine_connected = false;
  bool coarse_lower_bound_holds = true;  // D_H(coarse, projected) <= D_H(fine, truth)
  double decode_step_ms = 0.0;
  std::optional<double> bound_hamming_fine;  // normalized by T
  std::optional<double> bound_hamming_super; // normalized by T
  std::optional<double> bound_dest_fine;
};

TrialOutcome run_trial(const Scenario& scenario, double snr, std::int64_t trial, DecoderKind decoder,
                       const ThetaTable* bounds_theta);

struct SweepRow {
  std::int64_t m = 0;
  double snr = 0.0;
  std::int64_t trials = 0;
  Stat hamming_coarse;
  Stat hamming_fine;
  Stat destination;
  double bound_hamming_fine = std::numeric_limits<double>::quiet_NaN();
  double bound_dest_fine = std::numeric_limits<double>::quiet_NaN();
  double decode_step_ms = 0.0;  // median over trials
  std::string config_digest;
  std::vector<TrialOutcome> outcomes;
};

SweepRow evaluate_point(const Scenario& scenario, double snr, std::int64_t trials,
                        DecoderKind decoder, bool with_bounds, std::int64_t threads);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

struct ThresholdResult {
  std::int64_t m = 0;
  double simulated = 0.0;
  double bound_implied = std::numeric_limits<double>::quiet_NaN();  // NaN: not reached
  double decode_step_ms = 0.0;
  std::vector<std::pair<double, double>> evaluated;  // (snr, mean metric)
  bool all_coarse_lower_bounds_hold = true;
};

// Bisection on SNR for the smallest value whose trial-mean normalized metric
// is at most `target`. Throws NumericError when the bracket does not straddle
// the target or the evaluated points are clearly non-monotone.
ThresholdResult find_threshold(const Scenario& scenario, const ExperimentConfig& config);

std::string threshold_csv_header();
std::string threshold_csv_row(const ThresholdResult& result, const ExperimentConfig& config,
                              const std::string& digest);

struct BenchmarkResult {
  std::int64_t n = 0;
  std::int64_t edges = 0;
  std::int64_t m = 0;
  std::int64_t super_edges = 0;
  std::int64_t T = 0;
  double partition_ms = 0.0;
  double exact_step_ms = 0.0;       // fine Viterbi
  double multiscale_step_ms = 0.0;  // coarse Viterbi plus in-cluster argmax
  double coarsen_step_ms = 0.0;     // max-coarsening of the observations
  double exact_total_ms = 0.0;
  double multiscale_total_ms = 0.0;  // partitioning + coarsening + decoding
  double step_speedup = 0.0;
  double total_speedup = 0.0;
};

// Median of `repetitions` timed runs after `warmup` untimed ones. Observation
// synthesis is excluded.
BenchmarkResult run_benchmark(const Graph& graph, const NamedCoarsening& coarsening, std::int64_t T,
                              double snr, std::uint64_t seed, std::int64_t warmup,
                              std::int64_t repetitions);

std::string benchmark_csv_header();
std::string benchmark_csv_row(const BenchmarkResult& result, const std::string& digest);

struct MultipathRow {
  std::int64_t k = 0;
  double snr = 0.0;
  std::int64_t trials = 0;
  Stat set_hamming;  // set-based distance normalized by T * k
  std::vector<bool> coarse_lower_bounds;  // first round, per trial
  std::string config_digest;
};

MultipathRow evaluate_multipath(const Scenario& scenario, double snr, std::int64_t k,
                                std::int64_t trials, std::int64_t threads);

std::string multipath_csv_header();
std::string multipath_csv_row(const MultipathRow& row);

}  // namespace pathloc
