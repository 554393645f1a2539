#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "json.hpp"
#include "pathloc/bounds.hpp"
#include "pathloc/gaussian.hpp"
#include "pathloc/oracle.hpp"
#include "pathloc/theta.hpp"
#include "test_support.hpp"

namespace pathloc {
namespace {

void expect_rel(double actual, double expected, double tol) {
  EXPECT_LE(std::abs(actual - expected), tol * std::max(std::abs(expected), 1e-300))
      << "actual " << actual << " expected " << expected;
}

TEST(Gaussian, TailValues) {
  // Reference values from scipy.stats.norm.sf.
  expect_rel(gaussian_tail(1.96), 0.024997895148220435, 1e-12);
  expect_rel(gaussian_tail(0.0), 0.5, 1e-15);
  expect_rel(gaussian_tail(-1.0), 0.8413447460685429, 1e-12);
  expect_rel(gaussian_tail(8.0), 6.220960574271785e-16, 1e-10);
  expect_rel(gaussian_cdf(1.0), 0.8413447460685429, 1e-12);
}

TEST(Gaussian, QuantileRoundTrip) {
  for (double p = 1e-12; p < 1.0; p *= 1.7) {
    expect_rel(gaussian_cdf(gaussian_quantile(p)), p, 1e-12);
  }
  for (double p = 0.01; p < 1.0; p += 0.01) {
    EXPECT_NEAR(gaussian_cdf(gaussian_quantile(p)), p, 1e-14);
  }
  EXPECT_NEAR(gaussian_quantile(0.975), 1.959963984540054, 1e-13);
  EXPECT_NEAR(gaussian_tail_inverse(0.025), 1.959963984540054, 1e-13);
  EXPECT_EQ(gaussian_quantile(0.0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(gaussian_quantile(1.0), std::numeric_limits<double>::infinity());
  EXPECT_TRUE(std::isnan(gaussian_quantile(1.5)));
}

TEST(Mgf, SingleDrawIsExactAtEtaOne) {
  for (const double s : {0.3, 1.0, 2.0}) {
    expect_rel(mgf_bound_at(1.0, s, 1, 1.0), std::exp(s * s / 2.0), 1e-14);
    const auto best = mgf_bound(1.0, s, 1);
    EXPECT_GE(best.value, std::exp(s * s / 2.0) * (1.0 - 1e-12));
    expect_rel(best.value, std::exp(s * s / 2.0), 1e-9);
  }
}

TEST(Mgf, EndpointLimits) {
  const double a = 0.7;
  expect_rel(mgf_bound_at(1.0, a, 4, 1.0), 4.0 * std::exp(a * a / 2.0), 1e-14);
  expect_rel(mgf_bound_at(1.0, a, 4, 0.0), 4.0 / std::sqrt(7.0) * std::exp(a * a), 1e-14);
  // Continuity into the endpoints.
  expect_rel(mgf_bound_at(1.0, a, 4, 1.0 - 1e-9), mgf_bound_at(1.0, a, 4, 1.0), 1e-4);
  expect_rel(mgf_bound_at(1.0, a, 4, 1e-12), mgf_bound_at(1.0, a, 4, 0.0), 1e-6);
}

TEST(Mgf, BoundsTheTwoDrawMgf) {
  // E exp(max(X1, X2)) for X ~ N(0, 1) is 2 e^{1/2} Phi(1/sqrt 2).
  const double exact = 2.0 * std::exp(0.5) * gaussian_cdf(1.0 / std::sqrt(2.0));
  EXPECT_NEAR(exact, 2.506880490647316, 1e-12);
  EXPECT_GE(mgf_bound(1.0, 1.0, 2).value, exact);
}

TEST(Theta, ClampAndMonotonicity) {
  for (const double snr : {0.5, 2.0, 4.0, 6.0}) {
    const NoiseModel noise{snr, 1.0};
    double previous = 0.0;
    for (const std::int64_t l : {1, 2, 4, 16, 64, 256}) {
      const double th = theta(noise, l);
      EXPECT_LE(th, static_cast<double>(l) * std::exp(-snr * snr / 4.0));
      EXPECT_GT(th, 0.0);
      EXPECT_GE(th, previous);
      previous = th;
    }
  }
  for (const std::int64_t l : {1, 8, 64}) {
    EXPECT_GT(theta({3.0, 1.0}, l), theta({4.0, 1.0}, l));
  }
  // Only the ratio matters.
  expect_rel(theta({6.0, 2.0}, 9), theta({3.0, 1.0}, 9), 1e-9);
  EXPECT_THROW(theta({3.0, 1.0}, 0), ValidationError);
}

TEST(Theta, TableMatchesDirectEvaluation) {
  const ThetaTable table({3.5, 1.0});
  EXPECT_DOUBLE_EQ(table.s(), 1.75);
  for (const std::int64_t l : {1, 3, 20}) {
    EXPECT_EQ(table(l), theta({3.5, 1.0}, l));
    EXPECT_DOUBLE_EQ(table.log_theta(l), std::log(table(l)));
  }
}

TEST(Pairwise, EmptyAndSingle) {
  const ThetaTable table({3.0, 1.0});
  EXPECT_EQ(pairwise_path_bound(table, std::vector<std::int64_t>{}), 1.0);
  EXPECT_DOUBLE_EQ(pairwise_path_bound(table, std::vector<std::int64_t>{5}), table(5));
  expect_rel(pairwise_path_bound(table, std::vector<std::int64_t>{2, 7}), table(2) * table(7), 1e-12);
}

TEST(Pairwise, DominatesMonteCarloExceedance) {
  const NoiseModel noise{3.0, 1.0};
  const ThetaTable table(noise);
  const std::vector<std::int64_t> true_sizes{4, 4, 4};
  const std::vector<std::int64_t> alt_sizes{4, 2, 4};
  const bool overlap[] = {false, false, true};
  const auto mc = oracle::monte_carlo_exceedance(noise, true_sizes, alt_sizes, overlap, 100'000, 5);
  EXPECT_LE(mc.lower(), pairwise_path_bound(table, std::vector<std::int64_t>{4, 2}));
}

TEST(FirstK, EdgesAndOracle) {
  const ThetaTable table({2.5, 1.0});
  Rng rng(6);
  for (int instance = 0; instance < 20; ++instance) {
    const std::int64_t T = 1 + instance % 8;
    std::vector<std::int64_t> sizes(T);
    std::vector<double> values(T);
    for (std::int64_t t = 0; t < T; ++t) {
      sizes[t] = 1 + static_cast<std::int64_t>(rng.uniform_index(30));
      values[t] = table(sizes[t]);
    }
    const auto all = first_k_sums(table, sizes);
    EXPECT_EQ(all[0], 0.0);
    double full = 0.0;
    for (const double v : values) full += v;
    expect_rel(all[T], full, 1e-12);
    for (std::int64_t k = 0; k <= T; ++k) {
      EXPECT_NEAR(all[k], oracle::exhaustive_first_k_sum(values, k), 1e-12 * full);
      EXPECT_EQ(first_k_sum(table, sizes, k), all[k]);
    }
    EXPECT_THROW(first_k_sum(table, sizes, T + 1), ValidationError);
  }
}

struct Instance {
  Graph graph;
  Partition partition;
  SuperGraph supergraph;
  std::vector<ClusterId> truth;
};

Instance make_instance(std::int64_t m, std::int64_t T, std::uint64_t seed) {
  Rng rng(seed);
  Instance in;
  in.graph = testing::random_graph(12, 0.25, seed);
  in.partition = Partition::from_labels(testing::random_labels(12, m, rng));
  in.supergraph = build_supergraph(in.graph, in.partition);
  // Truth: a coarse walk if one exists, otherwise arbitrary clusters.
  const auto space = oracle::WalkSpace::coarse(in.graph, in.partition);
  std::vector<std::vector<ClusterId>> walks;
  oracle::enumerate_connected_walks(space, T, {5, 6, 1'000'000}, [&](std::span<const std::int32_t> w) {
    walks.emplace_back(w.begin(), w.end());
  });
  if (!walks.empty()) {
    in.truth = walks[rng.uniform_index(walks.size())];
  } else {
    for (std::int64_t t = 0; t < T; ++t) in.truth.push_back(static_cast<ClusterId>(rng.uniform_index(m)));
  }
  return in;
}

TEST(BoundDp, HammingMatchesEnumeration) {
  for (int instance = 0; instance < 40; ++instance) {
    const std::int64_t m = 1 + instance % 4;
    const std::int64_t T = 1 + (instance / 4) % 4;
    const auto in = make_instance(m, T, 1000 + instance);
    const ThetaTable table({1.0 + 0.25 * (instance % 9), 1.0});
    const auto both = bound_hamming_both(in.supergraph, in.truth, table);
    for (const auto kind : {BoundKind::hamming_super, BoundKind::hamming_fine}) {
      const auto& ours = kind == BoundKind::hamming_super ? both.super : both.fine;
      const auto ref = oracle::brute_force_bound(in.graph, in.partition, in.truth, table, kind,
                                                 DistanceMode::hop);
      ASSERT_EQ(ours.delta_curve.size(), ref.delta_curve.size());
      for (std::size_t k = 0; k < ref.delta_curve.size(); ++k) {
        expect_rel(ours.delta_curve[k], ref.delta_curve[k], 1e-9);
      }
      expect_rel(ours.value, ref.value, 1e-9);
    }
  }
}

TEST(BoundDp, DestinationMatchesEnumeration) {
  for (int instance = 0; instance < 40; ++instance) {
    const std::int64_t m = 1 + instance % 5;
    const std::int64_t T = 1 + (instance / 5) % 5;
    const auto in = make_instance(m, T, 2000 + instance);
    const ThetaTable table({1.5 + 0.5 * (instance % 5), 1.0});
    for (const auto mode : {DistanceMode::euclidean, DistanceMode::hop}) {
      for (const auto kind : {BoundKind::destination_super, BoundKind::destination_fine}) {
        auto ours = [&] {
          return kind == BoundKind::destination_super
                     ? bound_destination_super(in.supergraph, in.truth, table, mode)
                     : bound_destination_fine(in.graph, in.partition, in.supergraph, in.truth, table, mode);
        };
        auto ref = [&] {
          return oracle::brute_force_bound(in.graph, in.partition, in.truth, table, kind, mode);
        };
        bool ref_throws = false;
        oracle::BruteForceBound expected;
        try {
          expected = ref();
        } catch (const NumericError&) {
          ref_throws = true;
        }
        if (ref_throws) {
          EXPECT_THROW(ours(), NumericError);
        } else {
          expect_rel(ours().value, expected.value, 1e-9);
        }
      }
    }
  }
}

TEST(BoundDp, SingleClusterHasZeroDestinationBound) {
  const Graph g = testing::random_graph(6, 0.5, 3);
  const Partition p = Partition::from_labels(std::vector<std::int64_t>(6, 0));
  const SuperGraph sg = build_supergraph(g, p);
  const ThetaTable table({2.0, 1.0});
  const std::vector<ClusterId> truth{0, 0, 0};
  EXPECT_EQ(bound_destination_super(sg, truth, table, DistanceMode::hop).value, 0.0);
  EXPECT_EQ(bound_hamming_super(sg, truth, table).value, 0.0);
}

TEST(BoundDp, SingletonDestinationBoundsCoincide) {
  const Graph g = generate_rgg({.fixed_n = 60, .radius = 0.25, .seed = 4});
  std::vector<std::int64_t> labels(60);
  for (int v = 0; v < 60; ++v) labels[v] = v;
  const Partition p = Partition::from_labels(labels);
  const SuperGraph sg = build_supergraph(g, p);
  const ThetaTable table({4.0, 1.0});
  const std::vector<ClusterId> truth{0, g.neighbors(0)[0], 0};
  for (const auto mode : {DistanceMode::euclidean, DistanceMode::hop}) {
    expect_rel(bound_destination_fine(g, p, sg, truth, table, mode).value,
               bound_destination_super(sg, truth, table, mode).value, 1e-12);
  }
}

TEST(BoundDp, FineExceedsSuperByFirstKTerm) {
  const auto in = make_instance(4, 4, 77);
  const ThetaTable table({3.0, 1.0});
  const auto both = bound_hamming_both(in.supergraph, in.truth, table);
  const auto log_mass = hamming_log_mass(in.supergraph, in.truth, table);
  std::vector<std::int64_t> sizes;
  for (const ClusterId c : in.truth) sizes.push_back(in.supergraph.cluster_size(c));
  const auto f = first_k_sums(table, sizes);
  double gap = 0.0;
  for (std::size_t w = 0; w < log_mass.size(); ++w) gap += f[f.size() - 1 - w] * std::exp(log_mass[w]);
  for (std::size_t k = 0; k < both.super.delta_curve.size(); ++k) {
    expect_rel(both.fine.delta_curve[k] - both.super.delta_curve[k], gap, 1e-9);
  }
  EXPECT_GE(both.fine.value, both.super.value);
}

TEST(BoundDp, SaturatesAtHorizonForLargeNoise) {
  const Graph g = generate_rgg({.fixed_n = 300, .radius = 0.1, .seed = 2});
  const auto c = square_partition(g, 4);
  const std::vector<ClusterId> truth(20, c.partition.cluster_of(0));
  const ThetaTable table({1.0, 1e6});
  const auto both = bound_hamming_both(c.supergraph, truth, table);
  EXPECT_LE(both.super.value, 20.0);
  EXPECT_EQ(both.super.delta_star, 1.0);
  EXPECT_LE(*both.super.normalized_value, 1.0);
}

TEST(BoundDp, DecreasingInSnr) {
  const Graph g = generate_rgg({.fixed_n = 500, .radius = 0.08, .seed = 5});
  const auto c = square_partition(g, 5);
  std::vector<ClusterId> truth;
  ClusterId cur = c.partition.cluster_of(0);
  for (int t = 0; t < 30; ++t) {
    truth.push_back(cur);
    cur = c.supergraph.transitions(cur)[t % c.supergraph.transitions(cur).size()];
  }
  double prev_super = std::numeric_limits<double>::infinity();
  double prev_dest = std::numeric_limits<double>::infinity();
  for (double snr = 2.0; snr <= 9.0; snr += 0.5) {
    const ThetaTable table({snr, 1.0});
    const auto super = bound_hamming_super(c.supergraph, truth, table);
    const auto dest = bound_destination_fine(g, c.partition, c.supergraph, truth, table,
                                             DistanceMode::euclidean);
    EXPECT_LE(super.value, prev_super);
    EXPECT_LE(dest.value, prev_dest);
    prev_super = super.value;
    prev_dest = dest.value;
  }
}

TEST(BoundDp, RejectsBadTruth) {
  const auto in = make_instance(3, 3, 5);
  const ThetaTable table({2.0, 1.0});
  EXPECT_THROW(bound_hamming_super(in.supergraph, std::vector<ClusterId>{}, table), ValidationError);
  EXPECT_THROW(bound_hamming_super(in.supergraph, std::vector<ClusterId>{0, 9}, table), ValidationError);
}

TEST(ClosedForm, Examples) {
  const auto r = rgg_closed_form({4.0, 1.0}, 1, 100);
  expect_rel(*r.normalized_value, 9.0 * std::exp(-4.0), 1e-14);
  EXPECT_NEAR(*r.normalized_value, 0.1648407499986076, 1e-15);
  EXPECT_TRUE(r.condition_holds);

  const std::int64_t sm = 35;
  const double snr = rgg_threshold_snr(sm);
  const auto at = rgg_closed_form({snr, 1.0}, sm, 100);
  EXPECT_NEAR(at.value, 100.0, 1e-9);
  EXPECT_FALSE(at.condition_holds);
  EXPECT_TRUE(rgg_closed_form({snr + 1e-6, 1.0}, sm, 100).condition_holds);
  EXPECT_THROW(rgg_closed_form({4.0, 1.0}, 0, 10), ValidationError);
}

TEST(Report, JsonShape) {
  const auto in = make_instance(3, 3, 9);
  const ThetaTable table({3.0, 2.0});
  auto report = bound_hamming_super(in.supergraph, in.truth, table);
  report.config_digest = "abc";
  const auto doc = nlohmann::json::parse(bound_report_json(report));
  EXPECT_EQ(doc["kind"], "hammingSuper");
  EXPECT_EQ(doc["thetaParams"]["s"], 0.375);
  EXPECT_EQ(doc["thetaParams"]["sigma"], 2.0);
  EXPECT_EQ(doc["configDigest"], "abc");
  EXPECT_TRUE(doc.contains("deltaStar"));
  EXPECT_FALSE(doc.contains("conditionHolds"));
  EXPECT_EQ(parse_bound_kind("destinationFine"), BoundKind::destination_fine);
  EXPECT_FALSE(parse_bound_kind("nope").has_value());
}

}  // namespace
}  // namespace pathloc
