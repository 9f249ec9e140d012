#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "moa/core.hpp"
#include "moa/indicators.hpp"
#include "moa/kernels.hpp"

namespace moa {

enum class DistanceMetric {
  /// Euclidean distance on raw objective values.
  euclidean,
  /// Euclidean distance after dividing each objective by psi0's range.
  normalized,
};

/// For each psi0 member: max over runs of the distance to that run's closest
/// point. Values are indexed like psi0's members. Requires r >= 2.
std::vector<double> per_point_disparity(const Front& psi0, const RunSet& runs,
                                        DistanceMetric metric = DistanceMetric::euclidean,
                                        Exec exec = Exec::parallel);

/// Members of psi0 whose disparity is at most epsilon.
Front conservative_front(const Front& psi0, const std::vector<double>& disparity, double epsilon);

struct DisparityReport {
  ObjectiveVector eta_bar;
  double hv_psi0 = 0.0;
  double hv_psi1 = 0.0;
  std::optional<double> relative_difference;
  Front psi0;
  Front psi1;
  std::vector<double> per_point;  // parallel to psi0's members
};

/// Full multi-run evaluation for r >= 2 biobjective runs.
DisparityReport disparity_report(const RunSet& runs,
                                 DistanceMetric metric = DistanceMetric::euclidean,
                                 Exec exec = Exec::parallel);

inline constexpr double kDefaultConvergenceThreshold = 0.05;

struct ConvergenceVerdict {
  enum class Status { converged, rerun_advised };
  Status status = Status::rerun_advised;
  std::optional<double> relative_difference;
  std::string diagnostic;
};

std::string to_string(ConvergenceVerdict::Status s);

/// rerun_advised iff the relative difference exceeds `threshold` or is undefined.
ConvergenceVerdict convergence_check(const std::optional<double>& relative_difference,
                                     double threshold = kDefaultConvergenceThreshold);
ConvergenceVerdict convergence_check(const RunSet& runs,
                                     double threshold = kDefaultConvergenceThreshold);

struct ComparisonVerdict {
  enum class Kind { first_dominates, second_dominates, incomparable };
  Kind kind = Kind::incomparable;
  /// Members of the first front not dominated by any member of the second.
  std::vector<Solution> first_witnesses;
  /// Members of the second front not dominated by any member of the first.
  std::vector<Solution> second_witnesses;
};

std::string to_string(ComparisonVerdict::Kind k);

/// first_dominates iff every member of b is dominated by some member of a.
ComparisonVerdict front_compare(const Front& a, const Front& b);

}  // namespace moa
