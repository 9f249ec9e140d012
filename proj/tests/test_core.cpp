#include <gtest/gtest.h>

#include <random>

#include "moa/core.hpp"
#include "moa/errors.hpp"
#include "oracles.hpp"

using namespace moa;

namespace {

Solution sol(std::initializer_list<double> obj, double param = 0.0) {
  return Solution{ParameterVector{param}, ObjectiveVector(obj), {}};
}

std::vector<std::vector<double>> objectives_of(const Front& f) { return oracle::points_of(f); }

}  // namespace

TEST(ObjectiveVector, RejectsNonFiniteAndShortVectors) {
  EXPECT_THROW(ObjectiveVector({1.0}), UsageError);
  EXPECT_THROW(ObjectiveVector({1.0, std::nan("")}), UsageError);
  EXPECT_THROW(ObjectiveVector({1.0, std::numeric_limits<double>::infinity()}), UsageError);
  EXPECT_NO_THROW(ObjectiveVector({1.0, -2.0}));
}

TEST(SearchSpace, RejectsBadBounds) {
  EXPECT_THROW(SearchSpace({Bound{1.0, 1.0}}), UsageError);
  EXPECT_THROW(SearchSpace({Bound{0.0, std::numeric_limits<double>::infinity()}}), UsageError);
  const SearchSpace s({Bound{-1.0, 1.0, "a"}, Bound{0.0, 2.0}});
  EXPECT_EQ(s.name(0), "a");
  EXPECT_EQ(s.name(1), "x1");
  EXPECT_EQ(s.clip(0, 3.0), 1.0);
  EXPECT_TRUE(s.contains(std::vector<double>{0.0, 2.0}));
  EXPECT_FALSE(s.contains(std::vector<double>{0.0, 2.1}));
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominates(ObjectiveVector{2, 2}, ObjectiveVector{1, 1}));
  EXPECT_FALSE(dominates(ObjectiveVector{1, 1}, ObjectiveVector{1, 1}));
  EXPECT_FALSE(dominates(ObjectiveVector{2, 0}, ObjectiveVector{0, 2}));
  EXPECT_TRUE(weakly_dominates(ObjectiveVector{1, 1}, ObjectiveVector{1, 1}));
  EXPECT_TRUE(weakly_dominates(ObjectiveVector{2, 2}, ObjectiveVector{1, 1}));
  EXPECT_FALSE(weakly_dominates(ObjectiveVector{1, 2}, ObjectiveVector{2, 1}));
}

TEST(Dominance, LengthMismatchThrows) {
  EXPECT_THROW(dominates(ObjectiveVector{1, 1}, ObjectiveVector{1, 1, 1}), UsageError);
  EXPECT_THROW(weakly_dominates(ObjectiveVector{1, 1}, ObjectiveVector{1, 1, 1}), UsageError);
  const auto f = nondominated_filter({sol({2, 2})});
  EXPECT_THROW(attains(f, ObjectiveVector{1, 1, 1}), UsageError);
}

TEST(Dominance, AntisymmetricAndTransitiveOnRandomTriples) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto p = oracle::lattice_points(gen, 3, 3, 3);
    const ObjectiveVector a(p[0]), b(p[1]), c(p[2]);
    if (a != b) EXPECT_FALSE(dominates(a, b) && dominates(b, a));
    if (dominates(a, b) && dominates(b, c)) EXPECT_TRUE(dominates(a, c));
    EXPECT_EQ(dominates(a, b), oracle::dominates(p[0], p[1]));
    EXPECT_EQ(weakly_dominates(a, b), dominates(a, b) || a == b);
  }
}

TEST(NondominatedFilter, Examples) {
  const auto f = nondominated_filter({sol({1, 1}), sol({2, 2}), sol({0, 3})});
  EXPECT_EQ(objectives_of(f), (std::vector<std::vector<double>>{{2, 2}, {0, 3}}));
  EXPECT_EQ(nondominated_filter({sol({1, 1})}).size(), 1u);
  const auto dup = nondominated_filter({sol({1, 1}, 0.0), sol({1, 1}, 1.0)});
  EXPECT_EQ(dup.size(), 2u);
  EXPECT_TRUE(nondominated_filter({}).empty());
}

TEST(NondominatedFilter, MatchesPairwiseOracleAndIsIdempotent) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    const auto pts = oracle::lattice_points(gen, 1 + trial % 40, dim, 6);
    const auto f = nondominated_filter(oracle::as_solutions(pts));
    std::vector<std::vector<double>> expect;
    for (auto i : oracle::pairwise_filter(pts)) expect.push_back(pts[i]);
    ASSERT_EQ(objectives_of(f), expect);

    const auto again = nondominated_filter(f.members());
    EXPECT_EQ(again, f);
    // Every discarded point is dominated by a retained one.
    for (const auto& p : pts) {
      bool kept = std::find(expect.begin(), expect.end(), p) != expect.end();
      if (kept) continue;
      EXPECT_TRUE(std::any_of(expect.begin(), expect.end(), [&](const auto& q) { return oracle::dominates(q, p); }));
    }
  }
}

TEST(Front, FromMembersRejectsDominatedMember) {
  EXPECT_THROW(Front::from_members({sol({1, 1}), sol({2, 2})}), UsageError);
  EXPECT_NO_THROW(Front::from_members({sol({1, 2}), sol({2, 1})}));
}

TEST(Attains, Examples) {
  const auto f = nondominated_filter({sol({2, 2})});
  EXPECT_TRUE(attains(f, ObjectiveVector{1, 1}));
  EXPECT_TRUE(attains(f, ObjectiveVector{2, 2}));
  EXPECT_FALSE(attains(f, ObjectiveVector{3, 1}));
}

TEST(Attains, MonotoneUnderWeakDominance) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 500; ++trial) {
    const auto f = oracle::as_front(oracle::lattice_points(gen, 8, 2, 5));
    const auto z = oracle::lattice_points(gen, 2, 2, 5);
    const ObjectiveVector a(z[0]), b(z[1]);
    if (attains(f, a) && weakly_dominates(a, b)) EXPECT_TRUE(attains(f, b));
  }
}

TEST(SyntheticPoint, CarriesSyntheticProvenance) {
  const auto s = synthetic_point(ObjectiveVector{1, 2});
  EXPECT_EQ(s.provenance.run, Provenance::kSynthetic);
  EXPECT_EQ(s.parameters.size(), 0u);
}
