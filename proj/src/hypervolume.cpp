#include <algorithm>
#include <cmath>
#include <numeric>

#include "moa/errors.hpp"
#include "moa/indicators.hpp"

namespace moa {

namespace {

constexpr std::size_t kMaxExactDim = 4;
constexpr std::size_t kMaxKernelDim = 16;

using Points = std::vector<std::vector<double>>;

// Points sorted by the first objective descending; sweep in the second.
double sweep_2d(Points pts, std::span<const double> ref) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] > b[0] : a[1] > b[1];
  });
  double area = 0.0;
  double covered = ref[1];
  for (const auto& p : pts) {
    if (p[1] > covered) {
      area += (p[0] - ref[0]) * (p[1] - covered);
      covered = p[1];
    }
  }
  return area;
}

// Slices along the last objective: between consecutive distinct levels the
// cross-section is the (d-1)-dimensional hypervolume of every point reaching
// above the slab.
double slice(Points pts, std::span<const double> ref, std::size_t dim) {
  if (pts.empty()) return 0.0;
  if (dim == 2) return sweep_2d(std::move(pts), ref.first(2));
  const std::size_t last = dim - 1;
  std::sort(pts.begin(), pts.end(), [last](const auto& a, const auto& b) { return a[last] > b[last]; });
  double volume = 0.0;
  Points active;
  for (std::size_t i = 0; i < pts.size();) {
    const double level = pts[i][last];
    while (i < pts.size() && pts[i][last] == level) active.push_back(pts[i++]);
    const double below = i < pts.size() ? pts[i][last] : ref[last];
    const double height = level - below;
    if (height > 0.0) volume += height * slice(active, ref, dim - 1);
  }
  return volume;
}

void check_reference(PointsView points, std::span<const double> reference) {
  if (reference.size() != points.dim) {
    throw UsageError("reference point has " + std::to_string(reference.size()) +
                     " objectives, points have " + std::to_string(points.dim));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    for (std::size_t j = 0; j < points.dim; ++j) {
      if (p[j] < reference[j]) {
        throw UsageError("point " + std::to_string(i) + " lies below the reference point in objective " +
                         std::to_string(j));
      }
    }
  }
}

}  // namespace

double hypervolume(PointsView points, std::span<const double> reference,
                   const HypervolumeOptions& options) {
  if (points.size() == 0) return 0.0;
  check_reference(points, reference);
  const std::size_t dim = points.dim;
  if (dim < 2) throw UsageError("hypervolume needs at least 2 objectives");

  if (dim > kMaxExactDim) {
    if (!options.allow_monte_carlo) {
      throw UnsupportedDimensionError(
          "exact hypervolume is limited to 4 objectives; enable the Monte-Carlo estimator "
          "explicitly for " + std::to_string(dim));
    }
    if (dim > kMaxKernelDim) throw UnsupportedDimensionError("at most 16 objectives are supported");
    std::vector<double> upper(reference.begin(), reference.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) upper[j] = std::max(upper[j], points[i][j]);
    }
    double box = 1.0;
    for (std::size_t j = 0; j < dim; ++j) box *= upper[j] - reference[j];
    if (box <= 0.0) return 0.0;
    const auto hits = options.exec == Exec::serial
                          ? kernels::dominated_sample_count_serial(points, reference, upper,
                                                                   options.monte_carlo_samples,
                                                                   options.monte_carlo_seed)
                          : kernels::dominated_sample_count_parallel(points, reference, upper,
                                                                     options.monte_carlo_samples,
                                                                     options.monte_carlo_seed);
    return box * static_cast<double>(hits) / static_cast<double>(options.monte_carlo_samples);
  }

  Points pts;
  pts.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    pts.emplace_back(p.begin(), p.end());
  }
  return slice(std::move(pts), reference, dim);
}

double hypervolume(const Front& front, const ObjectiveVector& reference,
                   const HypervolumeOptions& options) {
  if (front.empty()) return 0.0;
  const auto matrix = front.objective_matrix();
  return hypervolume(PointsView{matrix, front.objective_count()}, reference.values(), options);
}

double clipped_hypervolume(const Front& front, const ObjectiveVector& reference,
                           const HypervolumeOptions& options) {
  if (front.empty()) return 0.0;
  if (front.objective_count() != reference.size()) {
    throw UsageError("reference point and front have different objective counts");
  }
  std::vector<double> matrix;
  for (const auto& m : front) {
    if (weakly_dominates(m.objectives.values(), reference.values())) {
      matrix.insert(matrix.end(), m.objectives.begin(), m.objectives.end());
    }
  }
  return hypervolume(PointsView{matrix, front.objective_count()}, reference.values(), options);
}

}  // namespace moa
