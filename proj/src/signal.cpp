#include "pathloc/signal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "pathloc/rng.hpp"

namespace pathloc {

void NoiseModel::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("noise: mu must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("noise: sigma must be positive");
}

SignalMatrix path_signal(std::int64_t n, std::span<const TruePath> paths, double mu) {
  if (paths.empty()) throw ValidationError("signal: at least one path is required");
  const std::int64_t T = paths.front().length();
  if (T < 1) throw ValidationError("signal: path is empty");
  SignalMatrix x(T, n);
  for (const TruePath& p : paths) {
    if (p.length() != T) throw ValidationError("signal: paths have different lengths");
    for (std::int64_t t = 0; t < T; ++t) {
      const NodeId v = p.nodes[t];
      if (v < 0 || v >= n) throw ValidationError("signal: path node out of range");
      x(t, v) = mu;
    }
  }
  return x;
}

ObservationSeries synthesize_observations(const Graph& graph, std::span<const TruePath> paths,
                                          const NoiseModel& noise, std::uint64_t seed) {
  noise.validate();
  ObservationSeries obs;
  obs.values = path_signal(graph.node_count(), paths, noise.mu);
  obs.truth.assign(paths.begin(), paths.end());
  obs.noise = noise;
  obs.seed = seed;
  Rng rng(seed);
  for (std::int64_t t = 0; t < obs.values.rows(); ++t) {
    for (double& y : obs.values.row(t)) y += noise.sigma * rng.normal();
  }
  return obs;
}

SignalMatrix coarsen_observations(const SignalMatrix& fine, const Partition& partition) {
  if (fine.cols() != partition.node_count()) {
    throw ValidationError("coarsen: partition does not match the series width");
  }
  SignalMatrix coarse(fine.rows(), partition.cluster_count(),
                      -std::numeric_limits<double>::infinity());
  const auto assign = partition.assignment();
  for (std::int64_t t = 0; t < fine.rows(); ++t) {
    const auto y = fine.row(t);
    auto u = coarse.row(t);
    for (std::size_t v = 0; v < y.size(); ++v) u[assign[v]] = std::max(u[assign[v]], y[v]);
  }
  return coarse;
}

ObservationSeries subtract_path_signal(const ObservationSeries& obs, std::span<const NodeId> chain,
                                       double mu) {
  if (static_cast<std::int64_t>(chain.size()) != obs.horizon()) {
    throw ValidationError("subtract: chain length does not match the series horizon");
  }
  ObservationSeries out = obs;
  for (std::int64_t t = 0; t < obs.horizon(); ++t) {
    const NodeId v = chain[t];
    if (v < 0 || v >= obs.node_count()) throw ValidationError("subtract: node out of range");
    out.values(t, v) -= mu;
  }
  return out;
}

namespace {

void put_u64(std::ostream& out, std::uint64_t x) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((x >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw ValidationError("observation dump: truncated file");
  }
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return x;
}

}  // namespace

void write_observation_dump(std::ostream& out, const SignalMatrix& values) {
  put_u64(out, kObservationMagic);
  put_u64(out, static_cast<std::uint64_t>(values.rows()));
  put_u64(out, static_cast<std::uint64_t>(values.cols()));
  for (const double y : values.data()) put_u64(out, std::bit_cast<std::uint64_t>(y));
  if (!out) throw NumericError("observation dump: write failed");
}

SignalMatrix read_observation_dump(std::istream& in) {
  if (get_u64(in) != kObservationMagic) throw ValidationError("observation dump: bad magic");
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  if (rows > (1ULL << 31) || cols > (1ULL << 31)) {
    throw ValidationError("observation dump: implausible dimensions");
  }
  SignalMatrix values(static_cast<std::int64_t>(rows), static_cast<std::int64_t>(cols));
  for (std::int64_t t = 0; t < values.rows(); ++t) {
    for (double& y : values.row(t)) y = std::bit_cast<double>(get_u64(in));
  }
  return values;
}

void write_observation_dump_file(const std::string& path, const SignalMatrix& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_observation_dump(out, values);
}

SignalMatrix read_observation_dump_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_observation_dump(in);
}

}  // namespace pathloc
