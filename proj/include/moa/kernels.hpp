#pragma once

// Data-parallel inner loops. Every kernel ships a serial reference and an
// OpenMP version with identical results; tests pin them together and
// moa_bench compares their throughput.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace moa {

enum class Exec { serial, parallel };

/// Non-owning row-major view of `size()` points of dimension `dim`.
struct PointsView {
  std::span<const double> data;
  std::size_t dim = 0;

  std::size_t size() const noexcept { return dim == 0 ? 0 : data.size() / dim; }
  std::span<const double> operator[](std::size_t i) const { return data.subspan(i * dim, dim); }
};

namespace kernels {

/// Calls f(i) for i in [0, n). The parallel flavour requires f to be reentrant
/// and to write only to slot i of any shared output.
template <typename F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
}

/// Pairwise dominance bookkeeping for non-dominated sorting.
struct DominanceStructure {
  std::vector<std::size_t> dominated_by_count;        // how many points dominate i
  std::vector<std::vector<std::size_t>> dominates;    // indices i dominates, ascending
};

DominanceStructure dominance_structure_serial(PointsView points);
DominanceStructure dominance_structure_parallel(PointsView points);
DominanceStructure dominance_structure(PointsView points, Exec exec);

/// For each query point q: max over sets s of min over x in s of ||q - x||,
/// with each objective divided by scale[j] first (scale empty means 1).
std::vector<double> max_min_distance_serial(PointsView queries, std::span<const PointsView> sets,
                                            std::span<const double> scale);
std::vector<double> max_min_distance_parallel(PointsView queries,
                                              std::span<const PointsView> sets,
                                              std::span<const double> scale);

/// Empirical attainment evaluated at the centre of every cell of a regular
/// grid over [lower, upper]. Cells are enumerated with the first objective
/// varying fastest.
std::vector<double> grid_attainment_serial(std::span<const PointsView> runs,
                                           std::span<const double> lower,
                                           std::span<const double> upper, std::size_t cells);
std::vector<double> grid_attainment_parallel(std::span<const PointsView> runs,
                                             std::span<const double> lower,
                                             std::span<const double> upper, std::size_t cells);

/// Number of uniform samples in the box [lower, upper] weakly dominated by
/// some point. Sample i is derived from (seed, i) only, so both flavours
/// return the same count.
std::uint64_t dominated_sample_count_serial(PointsView points, std::span<const double> lower,
                                            std::span<const double> upper,
                                            std::uint64_t samples, std::uint64_t seed);
std::uint64_t dominated_sample_count_parallel(PointsView points, std::span<const double> lower,
                                              std::span<const double> upper,
                                              std::uint64_t samples, std::uint64_t seed);

}  // namespace kernels
}  // namespace moa
