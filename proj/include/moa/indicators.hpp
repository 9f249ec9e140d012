#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "moa/core.hpp"
#include "moa/kernels.hpp"

namespace moa {

/// The fronts of r independent runs sharing one objective count.
class RunSet {
 public:
  RunSet() = default;
  /// Throws UsageError when empty or when objective counts differ.
  explicit RunSet(std::vector<Front> runs);

  std::size_t size() const noexcept { return runs_.size(); }
  std::size_t objective_count() const noexcept { return objective_count_; }
  const Front& operator[](std::size_t i) const { return runs_[i]; }
  const std::vector<Front>& runs() const noexcept { return runs_; }
  auto begin() const noexcept { return runs_.begin(); }
  auto end() const noexcept { return runs_.end(); }

  /// Row-major objective matrices, one per run; views returned by views()
  /// stay valid as long as this RunSet lives.
  std::vector<PointsView> views() const;

 private:
  std::vector<Front> runs_;
  std::vector<std::vector<double>> matrices_;
  std::size_t objective_count_ = 0;
};

/// Fraction of runs whose front weakly dominates z. Always a multiple of 1/r.
double empirical_attainment(const ObjectiveVector& z, const RunSet& runs);

/// Non-dominated solutions over the union of all runs.
Front psi0(const RunSet& runs);

/// Corners of the region attained by every run (biobjective only). Members
/// are synthetic points, not evaluated solutions. Throws
/// UnsupportedDimensionError for n != 2.
Front psi1(const RunSet& runs);

struct HypervolumeOptions {
  /// Required for n > 4; the estimate samples the box between the reference
  /// point and the front's ideal point.
  bool allow_monte_carlo = false;
  std::uint64_t monte_carlo_samples = 1'000'000;
  std::uint64_t monte_carlo_seed = 0;
  Exec exec = Exec::parallel;
};

/// Measure of the union of boxes [p, x]. Exact for n <= 4. Throws UsageError
/// when a point has a coordinate below p.
double hypervolume(PointsView points, std::span<const double> reference,
                   const HypervolumeOptions& options = {});
double hypervolume(const Front& front, const ObjectiveVector& reference,
                   const HypervolumeOptions& options = {});

/// As hypervolume, but boxes of points lying below the reference in some
/// coordinate are clipped away (they contribute nothing).
double clipped_hypervolume(const Front& front, const ObjectiveVector& reference,
                           const HypervolumeOptions& options = {});

struct ReferencePoints {
  std::vector<ObjectiveVector> nadirs;   // per run, componentwise min
  std::vector<ObjectiveVector> ideals;   // per run, componentwise max
  ObjectiveVector conservative_nadir;    // componentwise max of the nadirs
};

ObjectiveVector nadir(const Front& front);
ObjectiveVector ideal(const Front& front);
ReferencePoints reference_points(const RunSet& runs);

/// (hv0 - hv1) / hv0; empty when hv0 is zero.
std::optional<double> relative_hypervolume_difference(double hv_psi0, double hv_psi1);

struct HypervolumeDisparity {
  ObjectiveVector eta_bar;
  double hv_psi0 = 0.0;
  double hv_psi1 = 0.0;
  std::optional<double> relative_difference;
};

/// Hypervolumes of psi0 and psi1 against the conservative nadir. Requires
/// r >= 2 and n = 2.
HypervolumeDisparity hypervolume_disparity(const RunSet& runs);

/// Grid estimate of the attainment function for any n, used in place of an
/// exact psi1 when n > 2.
struct AttainmentGrid {
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t cells = 0;
  std::vector<double> values;  // first objective varies fastest

  ObjectiveVector cell_center(std::size_t index) const;
};

AttainmentGrid grid_attainment(const RunSet& runs, std::span<const double> lower,
                               std::span<const double> upper, std::size_t cells,
                               Exec exec = Exec::parallel);

/// Non-dominated cell centres whose estimated attainment is at least `level`.
Front grid_attainment_surface(const AttainmentGrid& grid, double level = 1.0);

}  // namespace moa
