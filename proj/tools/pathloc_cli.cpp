// pathloc: graph generation, partitioning, path-signal simulation, bound
// evaluation, SNR sweeps, timing and multi-path runs.
//
// Exit codes: 0 success, 2 invalid input, 3 runtime or numeric failure,
// 4 resource budget exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathloc/bounds.hpp"
#include "pathloc/decoder.hpp"
#include "pathloc/harness.hpp"
#include "pathloc/path.hpp"
#include "pathloc/signal.hpp"

namespace {

using namespace pathloc;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitBudget = 4;

// Flags shared by every subcommand. Values are copied into the config only
// when the flag was given, so --config supplies the defaults.
struct CommonFlags {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string config_path;
  std::int64_t threads = 1;

  std::string graph_json;
  std::string edge_list;
  std::int64_t n = 2000;
  double intensity = 2000.0;
  double radius = 0.06;
  std::int64_t communities = 200;
  std::int64_t community_size = 50;
  std::int64_t ring_degree = 6;
  std::int64_t hubs = 50;
  std::int64_t hub_degree = 20;

  std::string partition = "square";
  std::vector<std::int64_t> squares{10};
  std::int64_t hubs_per_round = 0;
  std::int64_t max_cluster_size = 0;
  std::string partition_file;

  std::int64_t T = 100;
  std::int64_t trials = 50;
  std::vector<double> snr{4.0};
  std::string decoder = "multiscale";
  std::string distance = "euclidean";
};

struct Registered {
  CLI::Option* seed = nullptr;
  CLI::Option* out_dir = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* graph_json = nullptr;
  CLI::Option* edge_list = nullptr;
  CLI::Option* n = nullptr;
  CLI::Option* intensity = nullptr;
  CLI::Option* radius = nullptr;
  CLI::Option* communities = nullptr;
  CLI::Option* community_size = nullptr;
  CLI::Option* ring_degree = nullptr;
  CLI::Option* hubs = nullptr;
  CLI::Option* hub_degree = nullptr;
  CLI::Option* partition = nullptr;
  CLI::Option* squares = nullptr;
  CLI::Option* hubs_per_round = nullptr;
  CLI::Option* max_cluster_size = nullptr;
  CLI::Option* partition_file = nullptr;
  CLI::Option* T = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* snr = nullptr;
  CLI::Option* decoder = nullptr;
  CLI::Option* distance = nullptr;
};

void add_graph_flags(CLI::App& app, CommonFlags& f, Registered& r) {
  r.graph_json = app.add_option("--graph", f.graph_json, "Graph JSON file written by 'generate'");
  r.edge_list = app.add_option("--edge-list", f.edge_list, "Edge-list file ('u v' per line)");
  r.n = app.add_option("--n", f.n, "RGG: exact node count");
  r.intensity = app.add_option("--intensity", f.intensity, "RGG: Poisson mean node count");
  r.radius = app.add_option("--r", f.radius, "RGG: connection radius");
  r.communities = app.add_option("--communities", f.communities, "Hub-community: block count");
  r.community_size = app.add_option("--community-size", f.community_size, "Hub-community: block size");
  r.ring_degree = app.add_option("--ring-degree", f.ring_degree, "Hub-community: ring lattice degree");
  r.hubs = app.add_option("--hubs", f.hubs, "Hub-community: hub count");
  r.hub_degree = app.add_option("--hub-degree", f.hub_degree, "Hub-community: edges per hub");
}

void add_partition_flags(CLI::App& app, CommonFlags& f, Registered& r, bool method_flag) {
  if (method_flag) {
    r.partition = app.add_option("--partition", f.partition, "square | hub-shatter | file | identity");
  }
  r.squares = app.add_option("--B", f.squares, "Squares per side (square partition); a list sweeps m")
                  ->delimiter(',');
  r.hubs_per_round = app.add_option("--k-hubs", f.hubs_per_round, "Hub-shatter: hubs removed per round");
  r.max_cluster_size = app.add_option("--c", f.max_cluster_size, "Hub-shatter: largest kept component");
  r.partition_file = app.add_option("--partition-file", f.partition_file, "'node cluster' lines");
}

void add_run_flags(CLI::App& app, CommonFlags& f, Registered& r) {
  r.T = app.add_option("--T", f.T, "Path length");
  r.trials = app.add_option("--trials", f.trials, "Trials per point");
  r.snr = app.add_option("--snr", f.snr, "mu/sigma values (sigma = 1)")->delimiter(',');
  r.decoder = app.add_option("--decoder", f.decoder, "multiscale | exact | naive");
  r.distance = app.add_option("--distance", f.distance, "euclidean | hop");
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentConfig resolve(const CommonFlags& f, const Registered& r) {
  ExperimentConfig c;
  if (!f.config_path.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text(f.config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("config: ") + e.what());
    }
    c = config_from_json(doc);
  }
  if (given(r.seed)) {
    c.seed = f.seed;
    c.graph.seed = f.seed;
  }
  if (given(r.out_dir)) c.out_dir = f.out_dir;
  if (given(r.threads)) c.threads = f.threads;
  if (given(r.graph_json)) {
    c.graph.source = "json";
    c.graph.path = f.graph_json;
  }
  if (given(r.edge_list)) {
    c.graph.source = "edge-list";
    c.graph.path = f.edge_list;
  }
  if (given(r.n)) c.graph.n = f.n;
  if (given(r.intensity)) {
    c.graph.intensity = f.intensity;
    if (!given(r.n)) c.graph.n = -1;
  }
  if (given(r.radius)) c.graph.radius = f.radius;
  if (given(r.communities)) c.graph.hub.communities = f.communities;
  if (given(r.community_size)) c.graph.hub.community_size = f.community_size;
  if (given(r.ring_degree)) c.graph.hub.ring_degree = f.ring_degree;
  if (given(r.hubs)) c.graph.hub.hubs = f.hubs;
  if (given(r.hub_degree)) c.graph.hub.hub_degree = f.hub_degree;
  if (given(r.partition)) c.partition.method = f.partition;
  if (given(r.squares)) c.partition.squares = f.squares;
  if (given(r.hubs_per_round)) c.partition.hub.hubs_per_round = f.hubs_per_round;
  if (given(r.max_cluster_size)) c.partition.hub.max_cluster_size = f.max_cluster_size;
  if (given(r.partition_file)) {
    c.partition.path = f.partition_file;
    if (!given(r.partition)) c.partition.method = "file";
  }
  if (given(r.T)) c.T = f.T;
  if (given(r.trials)) c.trials = f.trials;
  if (given(r.snr)) c.snr = f.snr;
  if (given(r.decoder)) c.decoder = f.decoder;
  if (given(r.distance)) {
    if (f.distance == "euclidean") {
      c.distance = DistanceMode::euclidean;
    } else if (f.distance == "hop") {
      c.distance = DistanceMode::hop;
    } else {
      throw ValidationError("unknown distance mode '" + f.distance + "'");
    }
  }
  if (c.T < 1) throw ValidationError("T must be at least 1");
  if (c.trials < 1) throw ValidationError("trials must be at least 1");
  if (c.snr.empty()) throw ValidationError("at least one SNR value is required");
  for (const double s : c.snr) {
    if (!(s > 0.0)) throw ValidationError("SNR values must be positive");
  }
  if (!(c.sigma > 0.0)) throw ValidationError("sigma must be positive");
  return c;
}

std::filesystem::path output_path(const ExperimentConfig& c, const std::string& stem,
                                  const std::string& digest, const std::string& ext) {
  std::filesystem::create_directories(c.out_dir);
  return std::filesystem::path(c.out_dir) / (stem + "-" + digest + ext);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

// Writes the CSV text to the output directory and echoes it to stdout.
void emit_csv(const ExperimentConfig& c, const std::string& stem, const std::string& digest,
              const std::string& text) {
  const auto path = output_path(c, stem, digest, ".csv");
  write_file(path, text);
  std::cout << text;
  std::cerr << "wrote " << path.string() << "\n";
}

Scenario scenario_for(const ExperimentConfig& c, const Graph& graph, const Coarsening& coarsening) {
  Scenario sc;
  sc.graph = &graph;
  sc.coarsening = &coarsening;
  sc.T = c.T;
  sc.sigma = c.sigma;
  sc.seed = c.seed;
  sc.distance = c.distance;
  return sc;
}

void print_warnings(const std::vector<NamedCoarsening>& parts) {
  for (const auto& p : parts) {
    for (const auto& w : p.coarsening.warnings) std::cerr << "warning: " << w << "\n";
  }
}

int cmd_generate(const ExperimentConfig& c) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto path = output_path(c, "graph", digest, ".json");
  write_file(path, graph_to_json(graph));
  nlohmann::ordered_json summary;
  summary["graph"] = path.string();
  summary["n"] = graph.node_count();
  summary["edges"] = graph.edge_count();
  summary["configDigest"] = digest;
  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_partition(const ExperimentConfig& c) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto parts = build_partitions(graph, c.partition);
  print_warnings(parts);
  for (const auto& named : parts) {
    const Partition& p = named.coarsening.partition;
    std::ostringstream text;
    text << "# node cluster\n";
    const auto& labels = graph.original_ids();
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      text << (labels.empty() ? v : labels[v]) << ' ' << p.cluster_of(v) << '\n';
    }
    const std::string stem = "partition-m" + std::to_string(p.cluster_count());
    const auto path = output_path(c, stem, digest, ".txt");
    write_file(path, text.str());
    nlohmann::ordered_json summary;
    summary["partition"] = path.string();
    summary["method"] = c.partition.method;
    summary["m"] = p.cluster_count();
    summary["maxClusterSize"] = p.max_cluster_size();
    summary["superEdges"] = named.coarsening.supergraph.edge_count();
    summary["selfLoops"] = named.coarsening.supergraph.self_loop_count();
    summary["partitionMs"] = named.partition_ms;
    summary["warnings"] = named.coarsening.warnings;
    summary["configDigest"] = digest;
    std::cout << summary.dump() << "\n";
  }
  return 0;
}

int cmd_simulate(const ExperimentConfig& c, const std::string& chain_out, const std::string& dump_out) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto parts = build_partitions(graph, c.partition);
  print_warnings(parts);
  const DecoderKind decoder = parse_decoder(c.decoder);
  std::ostringstream csv;
  csv << "trial,m,snr,decoder,hammingCoarse,hammingFine,destination,fineConnected,"
         "coarseLowerBound,decodeStepMs,configDigest\n";
  for (const auto& named : parts) {
    const Scenario sc = scenario_for(c, graph, named.coarsening);
    for (const double snr : c.snr) {
      const SweepRow row = evaluate_point(sc, snr, c.trials, decoder, false, c.threads);
      for (const auto& o : row.outcomes) {
        csv << o.trial << ',' << row.m << ',' << snr << ',' << c.decoder << ',' << o.hamming_coarse << ','
            << o.hamming_fine << ',' << o.destination << ',' << (o.fine_connected ? 1 : 0) << ','
            << (o.coarse_lower_bound_holds ? 1 : 0) << ',' << o.decode_step_ms << ',' << digest << '\n';
      }
    }
  }
  emit_csv(c, "simulate", digest, csv.str());

  if (!chain_out.empty() || !dump_out.empty()) {
    // Trial 0 at the first SNR and partition, decoded again for the chain dump.
    const Coarsening& coarsening = parts.front().coarsening;
    const TruePath truth = random_walk_path(graph, c.T, trial_path_seed(c.seed, 0));
    const NoiseModel noise{c.snr.front() * c.sigma, c.sigma};
    const ObservationSeries obs = synthesize_observations(graph, std::span<const TruePath>(&truth, 1),
                                                          noise, trial_noise_seed(c.seed, 0));
    if (!dump_out.empty()) write_observation_dump_file(dump_out, obs.values);
    if (!chain_out.empty()) {
      const auto start = std::chrono::steady_clock::now();
      ChainEstimate chain;
      if (decoder == DecoderKind::multiscale) {
        chain = multiscale_viterbi(graph, coarsening.partition, coarsening.supergraph, obs.values).fine;
      } else if (decoder == DecoderKind::exact) {
        chain = viterbi_max_sum_path(graph, obs.values);
      } else {
        chain = naive_argmax_chain(graph, obs.values);
      }
      const double wall =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      std::ostringstream rows;
      rows << "t,id\n";
      const auto& labels = graph.original_ids();
      for (std::size_t t = 0; t < chain.ids.size(); ++t) {
        rows << t << ',' << (labels.empty() ? chain.ids[t] : labels[chain.ids[t]]) << '\n';
      }
      write_file(chain_out + ".csv", rows.str());
      nlohmann::ordered_json summary;
      summary["sumSignal"] = chain.sum_signal;
      summary["connected"] = chain.connected;
      summary["hamming"] = hamming_distance(chain, truth);
      const auto dest = destination_distance(graph, chain, truth, c.distance);
      summary["destination"] = dest ? nlohmann::ordered_json(*dest) : nlohmann::ordered_json(nullptr);
      summary["wallTimeMs"] = wall;
      write_file(chain_out + ".json", summary.dump() + "\n");
    }
  }
  return 0;
}

int cmd_bound(const ExperimentConfig& c, const std::string& kind) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto parts = build_partitions(graph, c.partition);
  print_warnings(parts);
  const bool all = kind == "all";
  if (!all && !parse_bound_kind(kind)) throw ValidationError("unknown bound kind '" + kind + "'");
  auto wanted = [&](BoundKind k) { return all || kind == bound_kind_name(k); };

  std::ostringstream lines;
  for (const auto& named : parts) {
    const Coarsening& cg = named.coarsening;
    const auto truth = random_walk_path(graph, c.T, trial_path_seed(c.seed, 0)).projected(cg.partition);
    for (const double snr : c.snr) {
      const ThetaTable theta(NoiseModel{snr * c.sigma, c.sigma});
      std::vector<BoundReport> reports;
      if (wanted(BoundKind::hamming_super) || wanted(BoundKind::hamming_fine)) {
        auto both = bound_hamming_both(cg.supergraph, truth, theta);
        if (wanted(BoundKind::hamming_super)) reports.push_back(std::move(both.super));
        if (wanted(BoundKind::hamming_fine)) reports.push_back(std::move(both.fine));
      }
      if (wanted(BoundKind::destination_super)) {
        reports.push_back(bound_destination_super(cg.supergraph, truth, theta, c.distance));
      }
      if (wanted(BoundKind::destination_fine)) {
        reports.push_back(bound_destination_fine(graph, cg.partition, cg.supergraph, truth, theta, c.distance));
      }
      if (wanted(BoundKind::rgg_closed_form)) {
        reports.push_back(rgg_closed_form(theta.noise(), cg.partition.max_cluster_size(), c.T));
      }
      for (auto& r : reports) {
        r.config_digest = digest;
        lines << bound_report_json(r) << "\n";
      }
    }
  }
  const auto path = output_path(c, "bound", digest, ".jsonl");
  write_file(path, lines.str());
  std::cout << lines.str();
  return 0;
}

int cmd_sweep(const ExperimentConfig& c, const std::string& threshold) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto parts = build_partitions(graph, c.partition);
  print_warnings(parts);
  std::ostringstream csv;
  if (!threshold.empty()) {
    csv << threshold_csv_header() << "\n";
    for (const auto& named : parts) {
      const ThresholdResult r = find_threshold(scenario_for(c, graph, named.coarsening), c);
      csv << threshold_csv_row(r, c, digest) << "\n";
    }
    emit_csv(c, "threshold", digest, csv.str());
    return 0;
  }
  const DecoderKind decoder = parse_decoder(c.decoder);
  csv << sweep_csv_header() << "\n";
  for (const auto& named : parts) {
    const Scenario sc = scenario_for(c, graph, named.coarsening);
    for (const double snr : c.snr) {
      SweepRow row = evaluate_point(sc, snr, c.trials, decoder, c.bounds, c.threads);
      row.config_digest = digest;
      csv << sweep_csv_row(row) << "\n";
    }
  }
  emit_csv(c, "sweep", digest, csv.str());
  return 0;
}

int cmd_benchmark(const ExperimentConfig& c) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto parts = build_partitions(graph, c.partition);
  print_warnings(parts);
  std::ostringstream csv;
  csv << benchmark_csv_header() << "\n";
  for (const auto& named : parts) {
    const auto r = run_benchmark(graph, named, c.T, c.snr.front(), c.seed, c.warmup, c.repetitions);
    csv << benchmark_csv_row(r, digest) << "\n";
  }
  emit_csv(c, "benchmark", digest, csv.str());
  return 0;
}

int cmd_multipath(const ExperimentConfig& c) {
  const std::string digest = config_digest(c);
  const Graph graph = build_graph(c.graph);
  const auto parts = build_partitions(graph, c.partition);
  print_warnings(parts);
  std::ostringstream csv;
  csv << multipath_csv_header() << "\n";
  for (const auto& named : parts) {
    const Scenario sc = scenario_for(c, graph, named.coarsening);
    for (const std::int64_t k : c.paths) {
      for (const double snr : c.snr) {
        MultipathRow row = evaluate_multipath(sc, snr, k, c.trials, c.threads);
        row.config_digest = digest;
        csv << multipath_csv_row(row) << "\n";
      }
    }
  }
  emit_csv(c, "multipath", digest, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-signal localization on graphs: exact and multiscale Viterbi decoding with "
               "computable error bounds."};
  app.require_subcommand(1);
  app.fallthrough();
  CommonFlags f;
  Registered r;  // global flags
  std::map<const CLI::App*, Registered> regs;
  r.seed = app.add_option("--seed", f.seed, "Master seed (graph and trials)");
  r.out_dir = app.add_option("--out-dir", f.out_dir, "Output directory");
  app.add_option("--config", f.config_path, "JSON experiment config; flags override it");
  r.threads = app.add_option("--threads", f.threads, "Worker threads (0: all cores)");

  auto* generate = app.add_subcommand("generate", "Generate or convert a graph to JSON");
  std::string source = "rgg";
  generate->add_option("source", source, "rgg | hub-community | edge-list")->required();
  add_graph_flags(*generate, f, regs[generate]);

  auto* partition = app.add_subcommand("partition", "Partition a graph and write 'node cluster' lines");
  partition->add_option("method", f.partition, "square | hub-shatter | file | identity")->required();
  add_graph_flags(*partition, f, regs[partition]);
  add_partition_flags(*partition, f, regs[partition], false);

  auto* simulate = app.add_subcommand(
      "simulate", "Per-trial decoding errors.\nCSV columns: trial,m,snr,decoder,hammingCoarse,hammingFine,"
                  "destination,fineConnected,coarseLowerBound,decodeStepMs,configDigest");
  std::string chain_out;
  std::string dump_out;
  add_graph_flags(*simulate, f, regs[simulate]);
  add_partition_flags(*simulate, f, regs[simulate], true);
  add_run_flags(*simulate, f, regs[simulate]);
  simulate->add_option("--chain-out", chain_out, "Write trial 0's chain as <prefix>.csv and <prefix>.json");
  simulate->add_option("--dump-observations", dump_out, "Write trial 0's observations (binary)");

  auto* bound = app.add_subcommand("bound", "Evaluate error bounds for trial 0's path (JSON lines)");
  std::string kind = "all";
  add_graph_flags(*bound, f, regs[bound]);
  add_partition_flags(*bound, f, regs[bound], true);
  add_run_flags(*bound, f, regs[bound]);
  bound->add_option("--kind", kind,
                    "all | hammingSuper | destinationSuper | hammingFine | destinationFine | rggClosedForm");

  auto* sweep = app.add_subcommand(
      "sweep", "SNR grid or threshold search.\nGrid CSV columns: " + sweep_csv_header() +
                   "\nThreshold CSV columns: " + threshold_csv_header());
  std::string threshold;
  double target = 0.05;
  double resolution = 0.05;
  bool with_bounds = false;
  add_graph_flags(*sweep, f, regs[sweep]);
  add_partition_flags(*sweep, f, regs[sweep], true);
  add_run_flags(*sweep, f, regs[sweep]);
  auto* threshold_opt = sweep->add_option("--threshold", threshold, "hamming | destination: bisect on SNR");
  auto* target_opt = sweep->add_option("--target", target, "Normalized metric target");
  auto* resolution_opt = sweep->add_option("--resolution", resolution, "SNR resolution of the bisection");
  auto* bounds_opt = sweep->add_flag("--bounds", with_bounds, "Add per-trial bound values to grid rows");

  auto* benchmark = app.add_subcommand(
      "benchmark", "Per-step decode timing, exact vs multiscale.\nCSV columns: " + benchmark_csv_header());
  std::int64_t warmup = 1;
  std::int64_t repetitions = 5;
  add_graph_flags(*benchmark, f, regs[benchmark]);
  add_partition_flags(*benchmark, f, regs[benchmark], true);
  add_run_flags(*benchmark, f, regs[benchmark]);
  auto* warmup_opt = benchmark->add_option("--warmup", warmup, "Untimed runs");
  auto* reps_opt = benchmark->add_option("--repetitions", repetitions, "Timed runs (median reported)");

  auto* multipath = app.add_subcommand(
      "multipath", "Sequential multi-path decoding.\nCSV columns: " + multipath_csv_header());
  std::vector<std::int64_t> ks{1, 2, 5};
  add_graph_flags(*multipath, f, regs[multipath]);
  add_partition_flags(*multipath, f, regs[multipath], true);
  add_run_flags(*multipath, f, regs[multipath]);
  auto* k_opt = multipath->add_option("--k", ks, "Path counts")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  // Subcommand registrations plus the global flags.
  auto flags_of = [&](const CLI::App* sub) {
    Registered out = regs[sub];
    out.seed = r.seed;
    out.out_dir = r.out_dir;
    out.threads = r.threads;
    return out;
  };

  try {
    if (generate->parsed()) {
      ExperimentConfig c = resolve(f, flags_of(generate));
      if (source == "edge-list") {
        if (f.edge_list.empty()) throw ValidationError("generate edge-list needs --edge-list FILE");
      } else {
        c.graph.source = source;
      }
      return cmd_generate(c);
    }
    if (partition->parsed()) {
      ExperimentConfig c = resolve(f, flags_of(partition));
      c.partition.method = f.partition;
      return cmd_partition(c);
    }
    if (simulate->parsed()) return cmd_simulate(resolve(f, flags_of(simulate)), chain_out, dump_out);
    if (bound->parsed()) return cmd_bound(resolve(f, flags_of(bound)), kind);
    if (sweep->parsed()) {
      ExperimentConfig c = resolve(f, flags_of(sweep));
      if (given(threshold_opt)) c.target_metric = threshold;
      if (given(target_opt)) c.target = target;
      if (given(resolution_opt)) c.resolution = resolution;
      if (given(bounds_opt)) c.bounds = with_bounds;
      return cmd_sweep(c, given(threshold_opt) ? c.target_metric : std::string());
    }
    if (benchmark->parsed()) {
      ExperimentConfig c = resolve(f, flags_of(benchmark));
      if (given(warmup_opt)) c.warmup = warmup;
      if (given(reps_opt)) c.repetitions = repetitions;
      return cmd_benchmark(c);
    }
    if (multipath->parsed()) {
      ExperimentConfig c = resolve(f, flags_of(multipath));
      if (given(k_opt)) c.paths = ks;
      return cmd_multipath(c);
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::bad_alloc&) {
    std::cerr << "budget error: out of memory\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
