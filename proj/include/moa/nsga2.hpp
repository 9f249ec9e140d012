#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "moa/core.hpp"
#include "moa/kernels.hpp"
#include "moa/problems.hpp"

namespace moa {

struct AlgorithmConfig {
  std::size_t population_size = 100;
  std::size_t generations = 100;
  double crossover_probability = 0.9;
  /// Negative means 1/m for m parameters.
  double mutation_probability = -1.0;
  double sbx_eta = 15.0;
  double mutation_eta = 20.0;
  std::uint64_t seed = 0;
  Exec evaluation = Exec::parallel;

  /// Throws ConfigError on invalid settings.
  void validate() const;

  friend bool operator==(const AlgorithmConfig&, const AlgorithmConfig&) = default;
};

/// A population with non-dominated ranks and crowding distances.
struct RankedPopulation {
  std::vector<Solution> members;
  std::vector<std::size_t> rank;
  std::vector<double> crowding;

  /// Indices of each rank, rank 0 first.
  std::vector<std::vector<std::size_t>> fronts() const;
};

RankedPopulation fast_nondominated_sort(std::vector<Solution> population, Exec exec = Exec::serial);

/// Rank per point of a row-major objective matrix.
std::vector<std::size_t> nondominated_ranks(PointsView points, Exec exec = Exec::serial);

/// Crowding distance of mutually non-dominated objective vectors. Boundary
/// members get +inf; zero-range objectives contribute 0.
std::vector<double> crowding_distance(PointsView points);
std::vector<double> crowding_distance(std::span<const Solution> members);

/// Simulated binary crossover with one u in (0, 1) per variable; children are
/// clipped to the space.
std::pair<ParameterVector, ParameterVector> sbx_crossover(const ParameterVector& p1,
                                                          const ParameterVector& p2,
                                                          const SearchSpace& space, double eta,
                                                          std::span<const double> u);

double sbx_spread_factor(double u, double eta);

/// Bounded polynomial mutation of a single variable in [lo, hi].
double polynomial_mutation(double x, double lo, double hi, double eta, double u);

/// Mutates every variable with its own u.
ParameterVector polynomial_mutation(const ParameterVector& x, const SearchSpace& space, double eta,
                                    std::span<const double> u);

struct GenerationSnapshot {
  std::size_t generation;
  /// Objective vectors of the rank-0 set of the surviving population.
  std::vector<ObjectiveVector> rank0;
  /// True when environmental selection had to drop rank-0 members.
  bool rank0_truncated;
};

struct RunResult {
  Front front;
  std::uint64_t evaluations = 0;
  std::uint64_t nonfinite_evaluations = 0;
};

/// One seeded NSGA-II run. Deterministic in (config.seed, problem). Evaluations
/// returning non-finite objectives are demoted to the worst rank and counted.
/// `space` may narrow the problem's own bounds.
RunResult run_nsga2(const Problem& problem, const SearchSpace& space, const AlgorithmConfig& config,
                    std::int64_t run_index = 0,
                    const std::function<void(const GenerationSnapshot&)>& observer = {});

inline RunResult run_nsga2(const Problem& problem, const AlgorithmConfig& config,
                           std::int64_t run_index = 0,
                           const std::function<void(const GenerationSnapshot&)>& observer = {}) {
  return run_nsga2(problem, problem.space(), config, run_index, observer);
}

}  // namespace moa
