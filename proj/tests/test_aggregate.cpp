#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "moa/aggregate.hpp"
#include "moa/errors.hpp"
#include "oracles.hpp"

using namespace moa;
using P = oracle::Point;

namespace {

RunSet runs_of(const std::vector<std::vector<P>>& raw) {
  std::vector<Front> fronts;
  for (std::size_t i = 0; i < raw.size(); ++i) fronts.push_back(oracle::as_front(raw[i], static_cast<std::int64_t>(i)));
  return RunSet(std::move(fronts));
}

}  // namespace

TEST(PerPointDisparity, Examples) {
  const std::vector<P> f{{1, 3}, {2, 2}, {3, 1}};
  const auto same = runs_of({f, f});
  for (double d : per_point_disparity(psi0(same), same)) EXPECT_EQ(d, 0.0);

  const auto two = runs_of({{{0, 0}}, {{3, 4}}});
  const auto p0 = psi0(two);
  ASSERT_EQ(oracle::points_of(p0), (std::vector<P>{{3, 4}}));
  EXPECT_DOUBLE_EQ(per_point_disparity(p0, two)[0], 5.0);
}

TEST(PerPointDisparity, RequiresTwoNonEmptyRuns) {
  const auto one = runs_of({{{1, 1}}});
  EXPECT_THROW(per_point_disparity(psi0(one), one), UsageError);
  const RunSet with_empty({oracle::as_front({{1, 1}}), Front(2)});
  EXPECT_THROW(per_point_disparity(psi0(with_empty), with_empty), UsageError);
}

TEST(PerPointDisparity, MatchesOracleAndGrowsWithRuns) {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::vector<P>> raw{oracle::random_front(gen, 10, 2, 0.0, 5.0),
                                    oracle::random_front(gen, 10, 2, 0.0, 5.0)};
    const auto runs = runs_of(raw);
    const auto p0 = psi0(runs);
    const auto d = per_point_disparity(p0, runs, DistanceMetric::euclidean, Exec::serial);
    EXPECT_EQ(d, per_point_disparity(p0, runs, DistanceMetric::euclidean, Exec::parallel));
    for (std::size_t i = 0; i < p0.size(); ++i) {
      const P q(p0[i].objectives.begin(), p0[i].objectives.end());
      EXPECT_NEAR(d[i], oracle::disparity(q, raw), 1e-12);
      EXPECT_GE(d[i], 0.0);
    }
    // One more run: the max ranges over a superset, so no value shrinks.
    auto more = raw;
    more.push_back(oracle::random_front(gen, 10, 2, 0.0, 5.0));
    const auto bigger = per_point_disparity(p0, runs_of(more));
    for (std::size_t i = 0; i < p0.size(); ++i) EXPECT_GE(bigger[i], d[i]);
  }
}

TEST(PerPointDisparity, NormalizedMetricDividesByRange) {
  const auto runs = runs_of({{{0, 10}, {10, 0}}, {{0, 10}, {5, 0}}});
  const auto p0 = psi0(runs);
  const auto d = per_point_disparity(p0, runs, DistanceMetric::normalized);
  // (10,0) is 5 away from (5,0) in raw units; psi0 spans 10 in each objective.
  for (std::size_t i = 0; i < p0.size(); ++i) {
    if (p0[i].objectives == ObjectiveVector{10, 0}) EXPECT_DOUBLE_EQ(d[i], 0.5);
  }
}

TEST(ConservativeFront, MonotoneInEpsilon) {
  std::mt19937_64 gen(67);
  for (int trial = 0; trial < 50; ++trial) {
    const auto runs = runs_of({oracle::random_front(gen, 12, 2, 0.0, 1.0), oracle::random_front(gen, 12, 2, 0.0, 1.0)});
    const auto p0 = psi0(runs);
    const auto d = per_point_disparity(p0, runs);
    EXPECT_EQ(conservative_front(p0, d, std::numeric_limits<double>::infinity()), p0);
    const auto small = conservative_front(p0, d, 0.05);
    const auto large = conservative_front(p0, d, 0.2);
    for (const auto& s : small) EXPECT_NE(std::find(large.begin(), large.end(), s), large.end());
    for (std::size_t i = 0; i < p0.size(); ++i) {
      const bool kept = std::find(small.begin(), small.end(), p0[i]) != small.end();
      EXPECT_EQ(kept, d[i] <= 0.05);
    }
  }
  const std::vector<P> f{{1, 3}, {3, 1}};
  const auto same = runs_of({f, f});
  EXPECT_EQ(conservative_front(psi0(same), per_point_disparity(psi0(same), same), 0.0), psi0(same));
}

TEST(Convergence, Verdicts) {
  using S = ConvergenceVerdict::Status;
  EXPECT_EQ(convergence_check(0.007, 0.05).status, S::converged);
  EXPECT_EQ(convergence_check(0.052, 0.05).status, S::rerun_advised);
  EXPECT_EQ(convergence_check(std::nullopt, 0.05).status, S::rerun_advised);
  EXPECT_FALSE(convergence_check(std::nullopt, 0.05).diagnostic.empty());
  const std::vector<P> f{{1, 3}, {2, 2}, {3, 1}};
  EXPECT_EQ(convergence_check(runs_of({f, f}), 0.01).status, S::converged);
  // Against the conservative nadir (1, 1) this front has no volume.
  const std::vector<P> thin{{1, 3}, {3, 1}};
  EXPECT_EQ(convergence_check(runs_of({thin, thin}), 0.01).status, S::rerun_advised);
}

TEST(DisparityReport, Consistent) {
  std::mt19937_64 gen(71);
  const auto runs = runs_of({oracle::random_front(gen, 12, 2, 0.0, 1.0), oracle::random_front(gen, 12, 2, 0.0, 1.0)});
  const auto r = disparity_report(runs);
  EXPECT_EQ(r.per_point.size(), r.psi0.size());
  EXPECT_LE(r.hv_psi1, r.hv_psi0);
  ASSERT_TRUE(r.relative_difference);
  EXPECT_DOUBLE_EQ(*r.relative_difference, (r.hv_psi0 - r.hv_psi1) / r.hv_psi0);
}

TEST(FrontCompare, Examples) {
  using K = ComparisonVerdict::Kind;
  EXPECT_EQ(front_compare(oracle::as_front({{2, 2}}), oracle::as_front({{1, 1}})).kind, K::first_dominates);
  EXPECT_EQ(front_compare(oracle::as_front({{1, 1}}), oracle::as_front({{2, 2}})).kind, K::second_dominates);
  const auto a = oracle::as_front({{1, 3}, {3, 1}});
  EXPECT_EQ(front_compare(a, a).kind, K::incomparable);
  const auto v = front_compare(oracle::as_front({{2, 0}, {0, 2}}), oracle::as_front({{1, 1}}));
  EXPECT_EQ(v.kind, K::incomparable);
  EXPECT_FALSE(v.first_witnesses.empty());
  EXPECT_FALSE(v.second_witnesses.empty());
}

TEST(FrontCompare, Antisymmetric) {
  using K = ComparisonVerdict::Kind;
  std::mt19937_64 gen(73);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::as_front(oracle::lattice_points(gen, 4, 2, 4));
    const auto b = oracle::as_front(oracle::lattice_points(gen, 4, 2, 4));
    const auto ab = front_compare(a, b).kind;
    const auto ba = front_compare(b, a).kind;
    if (ab == K::first_dominates) EXPECT_EQ(ba, K::second_dominates);
    if (ab == K::incomparable) EXPECT_EQ(ba, K::incomparable);
  }
}
