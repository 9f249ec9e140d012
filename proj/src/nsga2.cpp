#include "moa/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iostream>
#include <numeric>

#include "moa/errors.hpp"
#include "moa/rng.hpp"

namespace moa {

void AlgorithmConfig::validate() const {
  if (population_size < 4 || population_size % 2 != 0) {
    throw ConfigError("algorithm.population_size must be an even integer >= 4, got " +
                      std::to_string(population_size));
  }
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw ConfigError("algorithm.crossover_probability must lie in [0, 1]");
  }
  if (mutation_probability > 1.0) {
    throw ConfigError("algorithm.mutation_probability must lie in [0, 1]");
  }
  if (!(sbx_eta > 0.0)) throw ConfigError("algorithm.sbx_eta must be positive");
  if (!(mutation_eta > 0.0)) throw ConfigError("algorithm.mutation_eta must be positive");
}

std::vector<std::vector<std::size_t>> RankedPopulation::fronts() const {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < rank.size(); ++i) {
    if (rank[i] >= out.size()) out.resize(rank[i] + 1);
    out[rank[i]].push_back(i);
  }
  return out;
}

std::vector<std::size_t> nondominated_ranks(PointsView points, Exec exec) {
  const std::size_t n = points.size();
  auto dom = kernels::dominance_structure(points, exec);
  std::vector<std::size_t> rank(n, 0);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dom.dominated_by_count[i] == 0) current.push_back(i);
  }
  std::size_t level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = level;
      for (std::size_t j : dom.dominates[i]) {
        if (--dom.dominated_by_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++level;
  }
  return rank;
}

std::vector<double> crowding_distance(PointsView points) {
  const std::size_t n = points.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (n < 3) return std::vector<double>(n, inf);
  std::vector<double> distance(n, 0.0);
  std::vector<std::size_t> order(n);
  for (std::size_t obj = 0; obj < points.dim; ++obj) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return points[a][obj] < points[b][obj]; });
    const double lo = points[order.front()][obj];
    const double hi = points[order.back()][obj];
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    const double range = hi - lo;
    if (range <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const std::size_t i = order[k];
      if (std::isinf(distance[i])) continue;
      distance[i] += (points[order[k + 1]][obj] - points[order[k - 1]][obj]) / range;
    }
  }
  return distance;
}

std::vector<double> crowding_distance(std::span<const Solution> members) {
  if (members.empty()) return {};
  const std::size_t dim = members.front().objectives.size();
  std::vector<double> matrix;
  matrix.reserve(members.size() * dim);
  for (const auto& m : members) matrix.insert(matrix.end(), m.objectives.begin(), m.objectives.end());
  return crowding_distance(PointsView{matrix, dim});
}

RankedPopulation fast_nondominated_sort(std::vector<Solution> population, Exec exec) {
  if (population.empty()) throw UsageError("cannot rank an empty population");
  const std::size_t dim = population.front().objectives.size();
  std::vector<double> matrix;
  matrix.reserve(population.size() * dim);
  for (const auto& s : population) {
    if (s.objectives.size() != dim) throw UsageError("population has mixed objective counts");
    matrix.insert(matrix.end(), s.objectives.begin(), s.objectives.end());
  }
  const PointsView view{matrix, dim};
  RankedPopulation out;
  out.rank = nondominated_ranks(view, exec);
  out.crowding.assign(population.size(), 0.0);
  out.members = std::move(population);
  for (const auto& front : out.fronts()) {
    std::vector<double> sub;
    for (std::size_t i : front) {
      const auto row = view[i];
      sub.insert(sub.end(), row.begin(), row.end());
    }
    const auto cd = crowding_distance(PointsView{sub, dim});
    for (std::size_t k = 0; k < front.size(); ++k) out.crowding[front[k]] = cd[k];
  }
  return out;
}

double sbx_spread_factor(double u, double eta) {
  const double e = 1.0 / (eta + 1.0);
  if (u <= 0.5) return std::pow(2.0 * u, e);
  return std::pow(1.0 / (2.0 * (1.0 - u)), e);
}

std::pair<ParameterVector, ParameterVector> sbx_crossover(const ParameterVector& p1,
                                                          const ParameterVector& p2,
                                                          const SearchSpace& space, double eta,
                                                          std::span<const double> u) {
  if (p1.size() != p2.size() || p1.size() != space.dimension() || u.size() != p1.size()) {
    throw UsageError("sbx_crossover: parents, bounds and random draws must have equal lengths");
  }
  std::vector<double> c1(p1.size()), c2(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (p1[i] == p2[i]) {
      c1[i] = p1[i];
      c2[i] = p2[i];
      continue;
    }
    const double beta = sbx_spread_factor(u[i], eta);
    c1[i] = space.clip(i, 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]));
    c2[i] = space.clip(i, 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]));
  }
  return {ParameterVector(std::move(c1)), ParameterVector(std::move(c2))};
}

double polynomial_mutation(double x, double lo, double hi, double eta, double u) {
  const double span = hi - lo;
  const double power = 1.0 / (eta + 1.0);
  double delta;
  if (u < 0.5) {
    const double headroom = 1.0 - (x - lo) / span;
    const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(headroom, eta + 1.0);
    delta = std::pow(val, power) - 1.0;
  } else {
    const double headroom = 1.0 - (hi - x) / span;
    const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(headroom, eta + 1.0);
    delta = 1.0 - std::pow(val, power);
  }
  return std::clamp(x + delta * span, lo, hi);
}

ParameterVector polynomial_mutation(const ParameterVector& x, const SearchSpace& space, double eta,
                                    std::span<const double> u) {
  if (x.size() != space.dimension() || u.size() != x.size()) {
    throw UsageError("polynomial_mutation: vector, bounds and random draws must have equal lengths");
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = polynomial_mutation(x[i], space[i].lo, space[i].hi, eta, u[i]);
  }
  return ParameterVector(std::move(out));
}

namespace {

struct Individual {
  std::vector<double> x;
  std::vector<double> f;  // internal orientation, possibly non-finite
  bool valid = false;
  std::int64_t generation = 0;
  std::int64_t evaluation = 0;
};

struct Ranking {
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

// Valid individuals are ranked by dominance; invalid ones share the rank
// after the last valid front.
Ranking rank_individuals(const std::vector<Individual>& pop, std::size_t dim, Exec exec) {
  std::vector<std::size_t> valid_idx;
  std::vector<double> matrix;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (!pop[i].valid) continue;
    valid_idx.push_back(i);
    matrix.insert(matrix.end(), pop[i].f.begin(), pop[i].f.end());
  }
  const PointsView view{matrix, dim};
  const auto valid_rank = nondominated_ranks(view, exec);
  std::size_t worst = 0;
  for (auto r : valid_rank) worst = std::max(worst, r + 1);

  Ranking out;
  out.rank.assign(pop.size(), worst);
  out.crowding.assign(pop.size(), 0.0);
  std::vector<std::vector<std::size_t>> fronts(worst);
  for (std::size_t k = 0; k < valid_idx.size(); ++k) {
    out.rank[valid_idx[k]] = valid_rank[k];
    fronts[valid_rank[k]].push_back(k);
  }
  for (const auto& front : fronts) {
    std::vector<double> sub;
    for (std::size_t k : front) {
      const auto row = view[k];
      sub.insert(sub.end(), row.begin(), row.end());
    }
    const auto cd = crowding_distance(PointsView{sub, dim});
    for (std::size_t t = 0; t < front.size(); ++t) out.crowding[valid_idx[front[t]]] = cd[t];
  }
  return out;
}

bool is_finite(std::span<const double> f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

class Nsga2Run {
 public:
  Nsga2Run(const Problem& problem, const SearchSpace& space, const AlgorithmConfig& config,
           std::int64_t run_index)
      : problem_(problem),
        space_(space),
        config_(config),
        run_index_(run_index),
        dim_(problem.objective_count()),
        init_rng_(config.seed, Stream::initialization),
        var_rng_(config.seed, Stream::variation) {
    mutation_probability_ = config.mutation_probability < 0.0
                                ? 1.0 / static_cast<double>(space.dimension())
                                : config.mutation_probability;
  }

  RunResult run(const std::function<void(const GenerationSnapshot&)>& observer) {
    const std::size_t n = config_.population_size;
    std::vector<Individual> pop(n);
    for (auto& ind : pop) {
      ind.x.resize(space_.dimension());
      for (std::size_t i = 0; i < ind.x.size(); ++i) {
        ind.x[i] = init_rng_.uniform(space_[i].lo, space_[i].hi);
      }
      ind.generation = 0;
    }
    evaluate(pop);
    auto ranking = rank_individuals(pop, dim_, Exec::serial);

    for (std::size_t gen = 1; gen <= config_.generations; ++gen) {
      auto offspring = make_offspring(pop, ranking, static_cast<std::int64_t>(gen));
      evaluate(offspring);
      pop.insert(pop.end(), std::make_move_iterator(offspring.begin()),
                 std::make_move_iterator(offspring.end()));
      bool truncated = false;
      std::tie(pop, ranking) = select_survivors(std::move(pop), truncated);
      if (observer) observer(snapshot(pop, ranking, gen, truncated));
    }

    RunResult result;
    std::vector<Solution> finals;
    for (const auto& ind : pop) {
      if (!ind.valid) continue;
      finals.push_back(Solution{ParameterVector(ind.x), ObjectiveVector(ind.f),
                                Provenance{run_index_, ind.generation, ind.evaluation}});
    }
    result.front = nondominated_filter(std::move(finals));
    result.evaluations = evaluations_;
    result.nonfinite_evaluations = nonfinite_;
    return result;
  }

 private:
  void evaluate(std::vector<Individual>& batch) {
    for (auto& ind : batch) ind.evaluation = static_cast<std::int64_t>(evaluations_++);
    std::vector<std::exception_ptr> errors(batch.size());
    kernels::for_each_index(batch.size(), config_.evaluation, [&](std::size_t i) {
      auto& ind = batch[i];
      try {
        ind.f = problem_.evaluate_internal(ind.x);
        ind.valid = ind.f.size() == dim_ && is_finite(ind.f);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (const auto& ind : batch) {
      if (!ind.valid) {
        ++nonfinite_;
        std::cerr << "warning: run " << run_index_ << " evaluation " << ind.evaluation
                  << " produced non-finite objectives; demoted to worst rank\n";
      }
    }
  }

  std::size_t tournament(const Ranking& ranking, std::size_t n) {
    const std::size_t a = var_rng_.below(n);
    const std::size_t b = var_rng_.below(n);
    if (ranking.rank[a] != ranking.rank[b]) return ranking.rank[a] < ranking.rank[b] ? a : b;
    if (ranking.crowding[a] != ranking.crowding[b]) {
      return ranking.crowding[a] > ranking.crowding[b] ? a : b;
    }
    return a;
  }

  std::vector<Individual> make_offspring(const std::vector<Individual>& pop,
                                         const Ranking& ranking, std::int64_t gen) {
    const std::size_t n = pop.size();
    const std::size_t m = space_.dimension();
    std::vector<Individual> children;
    children.reserve(n);
    std::vector<double> u(m);
    while (children.size() < n) {
      const auto& p1 = pop[tournament(ranking, n)];
      const auto& p2 = pop[tournament(ranking, n)];
      std::vector<double> c1 = p1.x, c2 = p2.x;
      if (var_rng_.uniform() < config_.crossover_probability) {
        for (auto& v : u) v = var_rng_.uniform_open();
        auto [a, b] = sbx_crossover(ParameterVector(p1.x), ParameterVector(p2.x), space_,
                                    config_.sbx_eta, u);
        c1.assign(a.begin(), a.end());
        c2.assign(b.begin(), b.end());
      }
      for (auto* child : {&c1, &c2}) {
        for (std::size_t i = 0; i < m; ++i) {
          if (var_rng_.uniform() < mutation_probability_) {
            (*child)[i] = polynomial_mutation((*child)[i], space_[i].lo, space_[i].hi,
                                              config_.mutation_eta, var_rng_.uniform_open());
          }
        }
        Individual ind;
        ind.x = std::move(*child);
        ind.generation = gen;
        children.push_back(std::move(ind));
      }
    }
    return children;
  }

  std::pair<std::vector<Individual>, Ranking> select_survivors(std::vector<Individual> combined,
                                                               bool& rank0_truncated) {
    const std::size_t n = config_.population_size;
    const auto ranking = rank_individuals(combined, dim_, Exec::serial);
    std::size_t levels = 0;
    for (auto r : ranking.rank) levels = std::max(levels, r + 1);
    std::vector<std::vector<std::size_t>> fronts(levels);
    for (std::size_t i = 0; i < combined.size(); ++i) fronts[ranking.rank[i]].push_back(i);

    std::vector<std::size_t> chosen;
    rank0_truncated = false;
    for (std::size_t level = 0; level < levels && chosen.size() < n; ++level) {
      auto& front = fronts[level];
      if (chosen.size() + front.size() <= n) {
        chosen.insert(chosen.end(), front.begin(), front.end());
        continue;
      }
      std::stable_sort(front.begin(), front.end(), [&](std::size_t a, std::size_t b) {
        return ranking.crowding[a] > ranking.crowding[b];
      });
      front.resize(n - chosen.size());
      chosen.insert(chosen.end(), front.begin(), front.end());
      if (level == 0) rank0_truncated = true;
    }

    std::vector<Individual> survivors;
    Ranking kept;
    survivors.reserve(n);
    for (std::size_t i : chosen) {
      survivors.push_back(std::move(combined[i]));
      kept.rank.push_back(ranking.rank[i]);
      kept.crowding.push_back(ranking.crowding[i]);
    }
    return {std::move(survivors), std::move(kept)};
  }

  static GenerationSnapshot snapshot(const std::vector<Individual>& pop, const Ranking& ranking,
                                     std::size_t gen, bool truncated) {
    GenerationSnapshot snap{gen, {}, truncated};
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (ranking.rank[i] == 0 && pop[i].valid) snap.rank0.emplace_back(pop[i].f);
    }
    return snap;
  }

  const Problem& problem_;
  const SearchSpace& space_;
  const AlgorithmConfig& config_;
  std::int64_t run_index_;
  std::size_t dim_;
  CounterRng init_rng_;
  CounterRng var_rng_;
  double mutation_probability_ = 0.0;
  std::uint64_t evaluations_ = 0;
  std::uint64_t nonfinite_ = 0;
};

}  // namespace

RunResult run_nsga2(const Problem& problem, const SearchSpace& space, const AlgorithmConfig& config,
                    std::int64_t run_index,
                    const std::function<void(const GenerationSnapshot&)>& observer) {
  config.validate();
  if (space.dimension() != problem.space().dimension()) {
    throw UsageError("search space dimension does not match the problem");
  }
  Nsga2Run run(problem, space, config, run_index);
  return run.run(observer);
}

}  // namespace moa
