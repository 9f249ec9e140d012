#include "moa/kernels.hpp"

#include <cmath>
#include <limits>

#include "moa/core.hpp"
#include "moa/rng.hpp"

namespace moa::kernels {

namespace {

void dominance_row(PointsView points, std::size_t i, DominanceStructure& out) {
  const std::size_t n = points.size();
  const auto pi = points[i];
  std::size_t count = 0;
  auto& row = out.dominates[i];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    const auto pj = points[j];
    if (dominates(pi, pj)) {
      row.push_back(j);
    } else if (dominates(pj, pi)) {
      ++count;
    }
  }
  out.dominated_by_count[i] = count;
}

DominanceStructure make_structure(std::size_t n) {
  DominanceStructure s;
  s.dominated_by_count.assign(n, 0);
  s.dominates.resize(n);
  return s;
}

double min_distance(std::span<const double> q, PointsView set, std::span<const double> scale) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto x = set[k];
    double sum = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      double d = q[j] - x[j];
      if (!scale.empty()) d /= scale[j];
      sum += d * d;
    }
    best = std::min(best, sum);
  }
  return std::sqrt(best);
}

double max_min_distance_at(PointsView queries, std::span<const PointsView> sets,
                           std::span<const double> scale, std::size_t i) {
  double worst = 0.0;
  for (const auto& set : sets) worst = std::max(worst, min_distance(queries[i], set, scale));
  return worst;
}

struct GridGeometry {
  std::size_t dim;
  std::size_t cells;
  std::size_t total;
};

GridGeometry grid_geometry(std::span<const double> lower, std::size_t cells) {
  std::size_t total = 1;
  for (std::size_t j = 0; j < lower.size(); ++j) total *= cells;
  return {lower.size(), cells, total};
}

double attainment_at(std::span<const PointsView> runs, std::span<const double> lower,
                     std::span<const double> upper, const GridGeometry& g, std::size_t cell) {
  double z[16];
  std::size_t rest = cell;
  for (std::size_t j = 0; j < g.dim; ++j) {
    const std::size_t c = rest % g.cells;
    rest /= g.cells;
    z[j] = lower[j] + (upper[j] - lower[j]) * (static_cast<double>(c) + 0.5) /
                          static_cast<double>(g.cells);
  }
  const std::span<const double> zs(z, g.dim);
  std::size_t hits = 0;
  for (const auto& run : runs) {
    for (std::size_t k = 0; k < run.size(); ++k) {
      if (weakly_dominates(run[k], zs)) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

bool sample_dominated(PointsView points, std::span<const double> lower,
                      std::span<const double> upper, const CounterRng& rng, std::uint64_t i) {
  double z[16];
  const std::size_t dim = lower.size();
  for (std::size_t j = 0; j < dim; ++j) {
    const double u = CounterRng::to_unit(rng.at(i * dim + j));
    z[j] = lower[j] + (upper[j] - lower[j]) * u;
  }
  const std::span<const double> zs(z, dim);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (weakly_dominates(points[k], zs)) return true;
  }
  return false;
}

}  // namespace

DominanceStructure dominance_structure_serial(PointsView points) {
  auto out = make_structure(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) dominance_row(points, i, out);
  return out;
}

DominanceStructure dominance_structure_parallel(PointsView points) {
  auto out = make_structure(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) dominance_row(points, static_cast<std::size_t>(i), out);
  return out;
}

DominanceStructure dominance_structure(PointsView points, Exec exec) {
  return exec == Exec::serial ? dominance_structure_serial(points)
                              : dominance_structure_parallel(points);
}

std::vector<double> max_min_distance_serial(PointsView queries, std::span<const PointsView> sets,
                                            std::span<const double> scale) {
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = max_min_distance_at(queries, sets, scale, i);
  return out;
}

std::vector<double> max_min_distance_parallel(PointsView queries,
                                              std::span<const PointsView> sets,
                                              std::span<const double> scale) {
  std::vector<double> out(queries.size());
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        max_min_distance_at(queries, sets, scale, static_cast<std::size_t>(i));
  }
  return out;
}

std::vector<double> grid_attainment_serial(std::span<const PointsView> runs,
                                           std::span<const double> lower,
                                           std::span<const double> upper, std::size_t cells) {
  const auto g = grid_geometry(lower, cells);
  std::vector<double> out(g.total);
  for (std::size_t c = 0; c < g.total; ++c) out[c] = attainment_at(runs, lower, upper, g, c);
  return out;
}

std::vector<double> grid_attainment_parallel(std::span<const PointsView> runs,
                                             std::span<const double> lower,
                                             std::span<const double> upper, std::size_t cells) {
  const auto g = grid_geometry(lower, cells);
  std::vector<double> out(g.total);
  const auto total = static_cast<std::ptrdiff_t>(g.total);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < total; ++c) {
    out[static_cast<std::size_t>(c)] =
        attainment_at(runs, lower, upper, g, static_cast<std::size_t>(c));
  }
  return out;
}

std::uint64_t dominated_sample_count_serial(PointsView points, std::span<const double> lower,
                                            std::span<const double> upper,
                                            std::uint64_t samples, std::uint64_t seed) {
  const CounterRng rng(seed, Stream::sampling);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) hits += sample_dominated(points, lower, upper, rng, i);
  return hits;
}

std::uint64_t dominated_sample_count_parallel(PointsView points, std::span<const double> lower,
                                              std::span<const double> upper,
                                              std::uint64_t samples, std::uint64_t seed) {
  const CounterRng rng(seed, Stream::sampling);
  std::uint64_t hits = 0;
  const auto n = static_cast<std::int64_t>(samples);
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    hits += sample_dominated(points, lower, upper, rng, static_cast<std::uint64_t>(i));
  }
  return hits;
}

}  // namespace moa::kernels
