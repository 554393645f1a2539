#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pathloc/oracle.hpp"
#include "pathloc/partition.hpp"
#include "pathloc/path.hpp"
#include "pathloc/signal.hpp"
#include "test_support.hpp"

namespace pathloc {
namespace {

TEST(Synthesize, NoiseFreeArgmaxIsTruth) {
  const Graph g = generate_rgg({.fixed_n = 200, .radius = 0.12, .seed = 4});
  const std::vector<TruePath> truth{random_walk_path(g, 30, 8)};
  const auto obs = synthesize_observations(g, truth, {1.0, 1e-12}, 5);
  for (std::int64_t t = 0; t < 30; ++t) {
    const auto row = obs.values.row(t);
    EXPECT_EQ(std::ranges::max_element(row) - row.begin(), truth[0].nodes[t]);
  }
}

TEST(Synthesize, OnPathMeanIsMu) {
  const Graph g = testing::path_graph(5);
  const std::vector<TruePath> truth{{{0, 1, 2}}};
  double sum = 0.0;
  const int trials = 10'000;
  for (int i = 0; i < trials; ++i) {
    const auto obs = synthesize_observations(g, truth, {1.0, 1.0}, split_seed(77, i));
    sum += obs.values(1, 1);
  }
  EXPECT_NEAR(sum / trials, 1.0, 0.03);
}

TEST(Synthesize, OverlapCountsOnce) {
  const Graph g = testing::path_graph(4);
  const std::vector<TruePath> paths{{{0, 1, 2}}, {{2, 1, 2}}};
  const SignalMatrix x = path_signal(4, paths, 2.5);
  EXPECT_EQ(x(1, 1), 2.5);
  EXPECT_EQ(x(2, 2), 2.5);
  EXPECT_EQ(x(0, 0), 2.5);
  EXPECT_EQ(x(0, 2), 2.5);
  EXPECT_EQ(x(0, 1), 0.0);
}

TEST(Synthesize, Errors) {
  const Graph g = testing::path_graph(4);
  const std::vector<TruePath> ragged{{{0, 1, 2}}, {{2, 3}}};
  EXPECT_THROW(synthesize_observations(g, ragged, {1.0, 1.0}, 1), ValidationError);
  const std::vector<TruePath> one{{{0, 1}}};
  EXPECT_THROW(synthesize_observations(g, one, {1.0, 0.0}, 1), ValidationError);
  EXPECT_THROW(synthesize_observations(g, one, {-1.0, 1.0}, 1), ValidationError);
}

TEST(Synthesize, SameSeedSameSeries) {
  const Graph g = testing::path_graph(6);
  const std::vector<TruePath> one{{{0, 1, 2, 3}}};
  EXPECT_EQ(synthesize_observations(g, one, {2.0, 1.0}, 9).values,
            synthesize_observations(g, one, {2.0, 1.0}, 9).values);
  EXPECT_NE(synthesize_observations(g, one, {2.0, 1.0}, 9).values,
            synthesize_observations(g, one, {2.0, 1.0}, 10).values);
}

TEST(Coarsen, SingletonsAreIdentity) {
  SignalMatrix y(3, 4);
  for (int t = 0; t < 3; ++t)
    for (int v = 0; v < 4; ++v) y(t, v) = t * 10.0 - v;
  const Partition p = Partition::from_labels(std::vector<std::int64_t>{0, 1, 2, 3});
  EXPECT_EQ(coarsen_observations(y, p), y);
}

TEST(Coarsen, PairTakesMax) {
  SignalMatrix y(1, 2);
  y(0, 0) = 3.0;
  y(0, 1) = -1.0;
  const Partition p = Partition::from_labels(std::vector<std::int64_t>{0, 0});
  EXPECT_EQ(coarsen_observations(y, p)(0, 0), 3.0);
}

TEST(Coarsen, MatchesDoubleLoop) {
  Rng rng(12);
  const Partition p = Partition::from_labels(testing::random_labels(50, 9, rng));
  SignalMatrix y(20, 50);
  for (int t = 0; t < 20; ++t)
    for (int v = 0; v < 50; ++v) y(t, v) = rng.normal();
  const SignalMatrix u = coarsen_observations(y, p);
  for (int t = 0; t < 20; ++t) {
    for (ClusterId c = 0; c < p.cluster_count(); ++c) {
      double best = -1e300;
      for (int v = 0; v < 50; ++v)
        if (p.cluster_of(v) == c) best = std::max(best, y(t, v));
      EXPECT_EQ(u(t, c), best);
    }
  }
}

TEST(Coarsen, TrueClusterMaxMatchesIndependentSampler) {
  // u_t on the true cluster is the max of one N(mu, s^2) and l - 1 N(0, s^2).
  const std::int64_t l = 6;
  const NoiseModel noise{1.5, 1.0};
  std::vector<std::int64_t> labels(12, 1);
  for (int v = 0; v < l; ++v) labels[v] = 0;
  const Partition p = Partition::from_labels(labels);
  const Graph g = testing::path_graph(12);
  const std::vector<TruePath> truth{{{2, 3, 2, 3, 2, 3, 2, 3, 2, 3}}};
  std::vector<double> ours;
  for (int i = 0; ours.size() < 20'000; ++i) {
    const auto obs = synthesize_observations(g, truth, noise, split_seed(5, i));
    const auto u = coarsen_observations(obs.values, p);
    for (int t = 0; t < 10; ++t) ours.push_back(u(t, 0));
  }
  const auto reference = oracle::sample_on_cluster_max(noise, l, 20'000, 99);
  // Two-sample KS critical value at alpha = 0.001: 1.95 sqrt(2 / n).
  EXPECT_LT(oracle::ks_statistic(ours, reference), 1.95 * std::sqrt(2.0 / 20'000.0));
}

TEST(Subtract, RoundTrip) {
  const Graph g = testing::path_graph(6);
  const std::vector<TruePath> truth{{{0, 1, 2, 3}}};
  const auto obs = synthesize_observations(g, truth, {2.0, 1.0}, 3);
  const std::vector<NodeId> chain{5, 4, 3, 2};
  const auto back = subtract_path_signal(subtract_path_signal(obs, chain, 2.0), chain, -2.0);
  for (std::size_t i = 0; i < obs.values.data().size(); ++i) {
    EXPECT_DOUBLE_EQ(back.values.data()[i], obs.values.data()[i]);
  }
}

TEST(Subtract, NoiseFreeTruthLeavesZeros) {
  const Graph g = testing::path_graph(6);
  const std::vector<TruePath> truth{{{0, 1, 2, 3}}};
  const auto obs = synthesize_observations(g, truth, {2.0, 1e-300}, 3);
  const auto rest = subtract_path_signal(obs, truth[0].nodes, 2.0);
  for (const double v : rest.values.data()) EXPECT_NEAR(v, 0.0, 1e-290);
}

TEST(Subtract, DisjointPathsLeaveTheOther) {
  const std::vector<TruePath> both{{{0, 1, 0}}, {{4, 5, 4}}};
  const std::vector<TruePath> second{both[1]};
  ObservationSeries obs;
  obs.values = path_signal(6, both, 1.5);
  const auto rest = subtract_path_signal(obs, both[0].nodes, 1.5);
  EXPECT_EQ(rest.values, path_signal(6, second, 1.5));
  EXPECT_THROW(subtract_path_signal(obs, std::vector<NodeId>{0, 1}, 1.5), ValidationError);
}

TEST(Dump, RoundTripIsBitExact) {
  SignalMatrix y(3, 5);
  Rng rng(4);
  for (double& v : y.row(0)) v = rng.normal();
  y(1, 2) = -0.0;
  y(2, 4) = 1e-310;
  std::stringstream buf;
  write_observation_dump(buf, y);
  EXPECT_EQ(buf.str().size(), 24u + 15u * 8u);
  EXPECT_EQ(buf.str().substr(0, 8), "PPATHLO1");
  const SignalMatrix back = read_observation_dump(buf);
  EXPECT_EQ(back.rows(), 3);
  EXPECT_EQ(back.cols(), 5);
  EXPECT_TRUE(std::signbit(back(1, 2)));
  EXPECT_EQ(back, y);
}

TEST(Dump, RejectsBadInput) {
  std::stringstream bad("not a dump at all, definitely not");
  EXPECT_THROW(read_observation_dump(bad), ValidationError);
  SignalMatrix y(2, 2, 1.0);
  std::stringstream buf;
  write_observation_dump(buf, y);
  std::stringstream truncated(buf.str().substr(0, 30));
  EXPECT_THROW(read_observation_dump(truncated), ValidationError);
}

}  // namespace
}  // namespace pathloc
