#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "moa/errors.hpp"
#include "moa/indicators.hpp"
#include "moa/nsga2.hpp"
#include "oracles.hpp"

using namespace moa;

namespace {

std::vector<double> flat(const std::vector<oracle::Point>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Maximizes (x0, 1 - x0) but breaks down above 0.9.
class Fragile final : public Problem {
 public:
  std::string name() const override { return "fragile"; }
  const SearchSpace& space() const override { return space_; }
  std::vector<Sense> senses() const override { return {Sense::maximize, Sense::maximize}; }
  std::vector<std::string> objective_names() const override { return {"a", "b"}; }
  std::vector<double> evaluate_physical(std::span<const double> x) const override {
    if (x[0] > 0.9) return {std::nan(""), 0.0};
    return {x[0], 1.0 - x[0] + 0.1 * x[1]};
  }

 private:
  SearchSpace space_{{Bound{0.0, 1.0}, Bound{0.0, 1.0}}};
};

// Synthetic objectives minus a penalty on a second parameter, so populations
// hold dominated members and rank 0 is not always truncated.
class Penalized final : public Problem {
 public:
  std::string name() const override { return "penalized"; }
  const SearchSpace& space() const override { return space_; }
  std::vector<Sense> senses() const override { return {Sense::maximize, Sense::maximize}; }
  std::vector<std::string> objective_names() const override { return {"a", "b"}; }
  std::vector<double> evaluate_physical(std::span<const double> x) const override {
    return {1.0 - x[0] * x[0] - x[1], 1.0 - (1.0 - x[0]) * (1.0 - x[0]) - x[1]};
  }

 private:
  SearchSpace space_{{Bound{0.0, 1.0}, Bound{0.0, 1.0}}};
};

AlgorithmConfig small(std::uint64_t seed) {
  AlgorithmConfig c;
  c.population_size = 20;
  c.generations = 10;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(FastSort, Examples) {
  std::vector<Solution> pop = oracle::as_solutions({{1, 1}, {2, 2}, {0, 3}});
  const auto r = fast_nondominated_sort(pop);
  EXPECT_EQ(r.rank, (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(r.fronts(), (std::vector<std::vector<std::size_t>>{{1, 2}, {0}}));

  const auto same = fast_nondominated_sort(oracle::as_solutions({{1, 1}, {1, 1}, {1, 1}}));
  EXPECT_EQ(same.rank, (std::vector<std::size_t>{0, 0, 0}));

  const auto chain = fast_nondominated_sort(oracle::as_solutions({{1, 1}, {2, 2}, {3, 3}}));
  EXPECT_EQ(chain.rank, (std::vector<std::size_t>{2, 1, 0}));
}

TEST(FastSort, MatchesPeelingOracleSerialAndParallel) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + trial % 3;
    const auto pts = trial % 2 ? oracle::lattice_points(gen, 1 + trial % 50, dim, 4)
                               : oracle::random_points(gen, 1 + trial % 50, dim, 0.0, 1.0);
    const auto data = flat(pts);
    const auto expect = oracle::peel_ranks(pts);
    EXPECT_EQ(nondominated_ranks({data, dim}, Exec::serial), expect);
    EXPECT_EQ(nondominated_ranks({data, dim}, Exec::parallel), expect);
  }
}

TEST(FastSort, RankInvariants) {
  std::mt19937_64 gen(29);
  const auto pts = oracle::lattice_points(gen, 40, 2, 6);
  const auto r = fast_nondominated_sort(oracle::as_solutions(pts));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (oracle::dominates(pts[j], pts[i])) EXPECT_LT(r.rank[j], r.rank[i]);
    }
  }
}

TEST(Crowding, Examples) {
  const auto d = crowding_distance(oracle::as_front({{1, 3}, {2, 2}, {3, 1}}).members());
  EXPECT_TRUE(std::isinf(d[0]));
  EXPECT_TRUE(std::isinf(d[2]));
  EXPECT_DOUBLE_EQ(d[1], 2.0);

  const auto two = crowding_distance(oracle::as_front({{1, 3}, {3, 1}}).members());
  EXPECT_TRUE(std::isinf(two[0]) && std::isinf(two[1]));

  // Second objective is constant, so only the first contributes.
  const std::vector<double> flat_obj{0, 5, 1, 5, 3, 5, 4, 5};
  const auto c = crowding_distance(PointsView{flat_obj, 2});
  EXPECT_TRUE(std::isinf(c[0]));
  EXPECT_TRUE(std::isinf(c[3]));
  EXPECT_DOUBLE_EQ(c[1], 0.75);
  EXPECT_DOUBLE_EQ(c[2], 0.75);
}

TEST(Sbx, SpreadFactorAndChildren) {
  EXPECT_DOUBLE_EQ(sbx_spread_factor(0.5, 15.0), 1.0);
  const SearchSpace space({Bound{0.0, 1.0}, Bound{0.0, 1.0}});
  const ParameterVector p1{0.2, 0.4}, p2{0.6, 0.4};
  const std::vector<double> mid{0.5, 0.5};
  const auto [a, b] = sbx_crossover(p1, p2, space, 15.0, mid);
  EXPECT_DOUBLE_EQ(a[0], 0.2);
  EXPECT_DOUBLE_EQ(b[0], 0.6);

  const std::vector<double> any{0.01, 0.99};
  const auto [c, d] = sbx_crossover(p2, p2, space, 15.0, any);
  EXPECT_EQ(c, p2);
  EXPECT_EQ(d, p2);

  // A wide spread pushes a child past the bound; it must be clipped.
  const std::vector<double> extreme{0.999999, 0.5};
  const auto [e, f] = sbx_crossover(ParameterVector{0.05, 0.5}, ParameterVector{0.95, 0.5}, space, 0.5, extreme);
  EXPECT_EQ(e[0], 0.0);
  EXPECT_EQ(f[0], 1.0);
}

TEST(Sbx, SpreadFactorMatchesClosedForm) {
  for (double eta : {1.0, 15.0, 30.0}) {
    for (double u : {0.01, 0.2, 0.5, 0.7, 0.99}) {
      const double expect = u <= 0.5 ? std::pow(2 * u, 1 / (eta + 1)) : std::pow(1 / (2 * (1 - u)), 1 / (eta + 1));
      EXPECT_NEAR(sbx_spread_factor(u, eta), expect, 1e-14);
    }
  }
}

TEST(PolynomialMutation, Examples) {
  EXPECT_DOUBLE_EQ(polynomial_mutation(0.3, 0.0, 1.0, 20.0, 0.5), 0.3);
  EXPECT_DOUBLE_EQ(polynomial_mutation(0.0, 0.0, 1.0, 20.0, 0.2), 0.0);
  for (double u : {0.1, 0.3, 0.7, 0.999}) {
    const double x = 0.3;
    const double d = u < 0.5 ? std::pow(2 * u + (1 - 2 * u) * std::pow(0.7, 21.0), 1.0 / 21) - 1
                             : 1 - std::pow(2 * (1 - u) + 2 * (u - 0.5) * std::pow(0.3, 21.0), 1.0 / 21);
    EXPECT_NEAR(polynomial_mutation(x, 0.0, 1.0, 20.0, u), x + d, 1e-14);
  }
  EXPECT_GT(polynomial_mutation(0.3, 0.0, 1.0, 20.0, 1.0 - 1e-15), 0.9999);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = u(gen) * 4.0 - 2.0;
    const double y = polynomial_mutation(x, -2.0, 2.0, 20.0, u(gen));
    EXPECT_GE(y, -2.0);
    EXPECT_LE(y, 2.0);
  }
}

TEST(AlgorithmConfig, Validation) {
  AlgorithmConfig c;
  EXPECT_NO_THROW(c.validate());
  c.population_size = 7;
  EXPECT_THROW(c.validate(), ConfigError);
  c.population_size = 2;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.sbx_eta = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.crossover_probability = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Run, DeterministicAndCountsEvaluations) {
  const SyntheticBiobjective problem;
  const auto a = run_nsga2(problem, small(5));
  const auto b = run_nsga2(problem, small(5));
  EXPECT_EQ(a.front, b.front);
  EXPECT_EQ(a.evaluations, 20u * 11u);
  const auto c = run_nsga2(problem, small(6));
  EXPECT_NE(a.front, c.front);

  auto serial = small(5);
  serial.evaluation = Exec::serial;
  EXPECT_EQ(run_nsga2(problem, serial).front, a.front);
}

TEST(Run, ZeroGenerationsIsFilteredInitialPopulation) {
  const SyntheticBiobjective problem;
  auto c = small(9);
  c.generations = 0;
  const auto r = run_nsga2(problem, c);
  EXPECT_EQ(r.evaluations, 20u);
  for (const auto& s : r.front) EXPECT_EQ(s.provenance.generation, 0);
  // Every synthetic point is Pareto optimal, so nothing is filtered.
  EXPECT_EQ(r.front.size(), 20u);
}

TEST(Run, SolutionsStayInNarrowedSpace) {
  const SyntheticBiobjective problem;
  const SearchSpace narrow({Bound{0.2, 0.4}});
  const auto r = run_nsga2(problem, narrow, small(1));
  for (const auto& s : r.front) {
    EXPECT_GE(s.parameters[0], 0.2);
    EXPECT_LE(s.parameters[0], 0.4);
  }
}

TEST(Run, NonFiniteEvaluationsAreDemotedNotFatal) {
  const Fragile problem;
  const auto r = run_nsga2(problem, small(3));
  EXPECT_GT(r.nonfinite_evaluations, 0u);
  EXPECT_FALSE(r.front.empty());
  for (const auto& s : r.front) EXPECT_LE(s.parameters[0], 0.9);
}

TEST(Run, ElitismUpToTruncation) {
  const Penalized problem;
  AlgorithmConfig c = small(12);
  c.population_size = 12;
  c.generations = 40;
  double last = -1.0;
  std::size_t checked = 0;
  run_nsga2(problem, c, 0, [&](const GenerationSnapshot& s) {
    std::vector<Solution> pts;
    for (const auto& v : s.rank0) pts.push_back(synthetic_point(v));
    const double hv = clipped_hypervolume(nondominated_filter(pts), ObjectiveVector{-1, -1});
    if (!s.rank0_truncated && last >= 0.0) {
      EXPECT_GE(hv, last - 1e-12) << "generation " << s.generation;
      ++checked;
    }
    last = hv;
  });
  EXPECT_GT(checked, 0u);
}
