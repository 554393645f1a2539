#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pathloc/graph.hpp"
#include "pathloc/partition.hpp"
#include "pathloc/path.hpp"

namespace pathloc {

struct NoiseModel {
  double mu = 1.0;
  double sigma = 1.0;

  void validate() const;
  double snr() const { return mu / sigma; }
};

// Dense row-major T x cols matrix; row t is the graph signal at time t.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  SignalMatrix(std::int64_t rows, std::int64_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  double& operator()(std::int64_t t, std::int64_t v) { return data_[t * cols_ + v]; }
  double operator()(std::int64_t t, std::int64_t v) const { return data_[t * cols_ + v]; }
  std::span<const double> row(std::int64_t t) const {
    return {data_.data() + t * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<double> row(std::int64_t t) {
    return {data_.data() + t * cols_, static_cast<std::size_t>(cols_)};
  }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const SignalMatrix&, const SignalMatrix&) = default;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> data_;
};

struct ObservationSeries {
  SignalMatrix values;           // y_t(v)
  std::vector<TruePath> truth;   // activated paths
  NoiseModel noise;
  std::uint64_t seed = 0;

  std::int64_t horizon() const { return values.rows(); }
  std::int64_t node_count() const { return values.cols(); }
};

// Noise-free activation matrix: mu at every (t, v) covered by some path.
// Overlapping paths contribute mu once.
SignalMatrix path_signal(std::int64_t n, std::span<const TruePath> paths, double mu);

// y_t(v) = path_signal + N(0, sigma^2), drawn t-major, v-minor from one
// stream seeded by `seed`.
ObservationSeries synthesize_observations(const Graph& graph, std::span<const TruePath> paths,
                                          const NoiseModel& noise, std::uint64_t seed);

// u_t(I) = max over members v of y_t(v).
SignalMatrix coarsen_observations(const SignalMatrix& fine, const Partition& partition);

// Copy of `obs` with mu subtracted at (t, chain[t]).
ObservationSeries subtract_path_signal(const ObservationSeries& obs, std::span<const NodeId> chain,
                                       double mu);

// Binary dump: 24-byte header {magic, T, n} of little-endian uint64, then the
// values as little-endian doubles, row-major.
inline constexpr std::uint64_t kObservationMagic = 0x314F4C4854415050ULL;  // "PPATHLO1"
void write_observation_dump(std::ostream& out, const SignalMatrix& values);
SignalMatrix read_observation_dump(std::istream& in);
void write_observation_dump_file(const std::string& path, const SignalMatrix& values);
SignalMatrix read_observation_dump_file(const std::string& path);

}  // namespace pathloc
