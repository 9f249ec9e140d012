#include "moa/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moa/errors.hpp"

namespace moa {

RunSet::RunSet(std::vector<Front> runs) : runs_(std::move(runs)) {
  if (runs_.empty()) throw UsageError("a run set needs at least one run");
  for (const auto& f : runs_) {
    if (f.empty()) continue;
    if (objective_count_ == 0) objective_count_ = f.objective_count();
    if (f.objective_count() != objective_count_) {
      throw UsageError("runs have mixed objective counts");
    }
  }
  matrices_.reserve(runs_.size());
  for (const auto& f : runs_) matrices_.push_back(f.objective_matrix());
}

std::vector<PointsView> RunSet::views() const {
  std::vector<PointsView> out;
  out.reserve(matrices_.size());
  for (const auto& m : matrices_) out.push_back(PointsView{m, objective_count_});
  return out;
}

double empirical_attainment(const ObjectiveVector& z, const RunSet& runs) {
  if (runs.size() == 0) throw UsageError("empirical attainment needs at least one run");
  std::size_t hits = 0;
  for (const auto& run : runs) hits += attains(run, z) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(runs.size());
}

Front psi0(const RunSet& runs) {
  std::vector<Solution> all;
  for (const auto& run : runs) all.insert(all.end(), run.begin(), run.end());
  return nondominated_filter(std::move(all));
}

Front psi1(const RunSet& runs) {
  if (runs.objective_count() != 2) {
    throw UnsupportedDimensionError(
        "exact psi1 is only available for 2 objectives; use grid_attainment for " +
        std::to_string(runs.objective_count()));
  }
  constexpr double none = -std::numeric_limits<double>::infinity();
  std::vector<double> levels;
  for (const auto& run : runs) {
    for (const auto& m : run) levels.push_back(m.objectives[0]);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // Lower envelope over runs of the best second objective reachable at
  // first-objective level >= t.
  std::vector<Solution> corners;
  for (double t : levels) {
    double envelope = std::numeric_limits<double>::infinity();
    for (const auto& run : runs) {
      double best = none;
      for (const auto& m : run) {
        if (m.objectives[0] >= t) best = std::max(best, m.objectives[1]);
      }
      envelope = std::min(envelope, best);
    }
    if (envelope == none) continue;
    corners.push_back(synthetic_point(ObjectiveVector{t, envelope}));
  }
  auto front = nondominated_filter(std::move(corners));
  std::vector<Solution> unique;
  for (const auto& s : front) {
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](const Solution& u) {
      return u.objectives == s.objectives;
    });
    if (!seen) unique.push_back(s);
  }
  return Front::from_members(std::move(unique));
}

ObjectiveVector nadir(const Front& front) {
  if (front.empty()) throw UsageError("nadir of an empty front is undefined");
  std::vector<double> v(front[0].objectives.begin(), front[0].objectives.end());
  for (const auto& m : front) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::min(v[j], m.objectives[j]);
  }
  return ObjectiveVector(std::move(v));
}

ObjectiveVector ideal(const Front& front) {
  if (front.empty()) throw UsageError("ideal of an empty front is undefined");
  std::vector<double> v(front[0].objectives.begin(), front[0].objectives.end());
  for (const auto& m : front) {
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::max(v[j], m.objectives[j]);
  }
  return ObjectiveVector(std::move(v));
}

ReferencePoints reference_points(const RunSet& runs) {
  if (runs.size() == 0) throw UsageError("reference points need at least one run");
  ReferencePoints out;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].empty()) throw UsageError("run " + std::to_string(r) + " has an empty front");
    out.nadirs.push_back(nadir(runs[r]));
    out.ideals.push_back(ideal(runs[r]));
  }
  std::vector<double> bar(out.nadirs[0].begin(), out.nadirs[0].end());
  for (const auto& n : out.nadirs) {
    for (std::size_t j = 0; j < bar.size(); ++j) bar[j] = std::max(bar[j], n[j]);
  }
  out.conservative_nadir = ObjectiveVector(std::move(bar));
  return out;
}

std::optional<double> relative_hypervolume_difference(double hv_psi0, double hv_psi1) {
  if (hv_psi0 == 0.0) return std::nullopt;
  return (hv_psi0 - hv_psi1) / hv_psi0;
}

HypervolumeDisparity hypervolume_disparity(const RunSet& runs) {
  if (runs.size() < 2) throw UsageError("disparity statistics need at least 2 runs");
  if (runs.objective_count() != 2) {
    throw UnsupportedDimensionError("hypervolume disparity requires exactly 2 objectives");
  }
  HypervolumeDisparity out;
  out.eta_bar = reference_points(runs).conservative_nadir;
  out.hv_psi0 = clipped_hypervolume(psi0(runs), out.eta_bar);
  out.hv_psi1 = clipped_hypervolume(psi1(runs), out.eta_bar);
  out.relative_difference = relative_hypervolume_difference(out.hv_psi0, out.hv_psi1);
  return out;
}

ObjectiveVector AttainmentGrid::cell_center(std::size_t index) const {
  std::vector<double> z(lower.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const std::size_t c = index % cells;
    index /= cells;
    z[j] = lower[j] + (upper[j] - lower[j]) * (static_cast<double>(c) + 0.5) /
                          static_cast<double>(cells);
  }
  return ObjectiveVector(std::move(z));
}

AttainmentGrid grid_attainment(const RunSet& runs, std::span<const double> lower,
                               std::span<const double> upper, std::size_t cells, Exec exec) {
  const std::size_t n = runs.objective_count();
  if (lower.size() != n || upper.size() != n) {
    throw UsageError("grid bounds must match the objective count");
  }
  if (n > 16) throw UnsupportedDimensionError("grid attainment supports at most 16 objectives");
  if (cells == 0) throw UsageError("grid needs at least one cell per axis");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(lower[j] < upper[j])) throw UsageError("grid bounds must satisfy lower < upper");
  }
  double total = std::pow(static_cast<double>(cells), static_cast<double>(n));
  if (total > 1e9) throw UsageError("grid too large");

  AttainmentGrid grid;
  grid.lower.assign(lower.begin(), lower.end());
  grid.upper.assign(upper.begin(), upper.end());
  grid.cells = cells;
  const auto views = runs.views();
  grid.values = exec == Exec::serial
                    ? kernels::grid_attainment_serial(views, lower, upper, cells)
                    : kernels::grid_attainment_parallel(views, lower, upper, cells);
  return grid;
}

Front grid_attainment_surface(const AttainmentGrid& grid, double level) {
  std::vector<Solution> hits;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    if (grid.values[i] >= level) hits.push_back(synthetic_point(grid.cell_center(i)));
  }
  return nondominated_filter(std::move(hits));
}

}  // namespace moa
