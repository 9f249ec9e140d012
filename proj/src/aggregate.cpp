#include "moa/aggregate.hpp"

#include <sstream>

#include "moa/errors.hpp"

namespace moa {

std::vector<double> per_point_disparity(const Front& psi0, const RunSet& runs,
                                        DistanceMetric metric, Exec exec) {
  if (runs.size() < 2) throw UsageError("per-point disparity needs at least 2 runs");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].empty()) throw UsageError("run " + std::to_string(r) + " has an empty front");
  }
  if (psi0.empty()) return {};
  if (psi0.objective_count() != runs.objective_count()) {
    throw UsageError("psi0 and runs have different objective counts");
  }

  std::vector<double> scale;
  if (metric == DistanceMetric::normalized) {
    const auto lo = nadir(psi0);
    const auto hi = ideal(psi0);
    for (std::size_t j = 0; j < lo.size(); ++j) {
      const double range = hi[j] - lo[j];
      scale.push_back(range > 0.0 ? range : 1.0);
    }
  }
  const auto queries = psi0.objective_matrix();
  const PointsView qv{queries, psi0.objective_count()};
  const auto sets = runs.views();
  return exec == Exec::serial ? kernels::max_min_distance_serial(qv, sets, scale)
                              : kernels::max_min_distance_parallel(qv, sets, scale);
}

Front conservative_front(const Front& psi0, const std::vector<double>& disparity, double epsilon) {
  if (disparity.size() != psi0.size()) {
    throw UsageError("disparity map does not cover psi0");
  }
  std::vector<Solution> kept;
  for (std::size_t i = 0; i < psi0.size(); ++i) {
    if (disparity[i] <= epsilon) kept.push_back(psi0[i]);
  }
  return Front::from_members(std::move(kept));
}

DisparityReport disparity_report(const RunSet& runs, DistanceMetric metric, Exec exec) {
  const auto hv = hypervolume_disparity(runs);
  DisparityReport report;
  report.eta_bar = hv.eta_bar;
  report.hv_psi0 = hv.hv_psi0;
  report.hv_psi1 = hv.hv_psi1;
  report.relative_difference = hv.relative_difference;
  report.psi0 = psi0(runs);
  report.psi1 = psi1(runs);
  report.per_point = per_point_disparity(report.psi0, runs, metric, exec);
  return report;
}

std::string to_string(ConvergenceVerdict::Status s) {
  return s == ConvergenceVerdict::Status::converged ? "converged" : "rerun_advised";
}

ConvergenceVerdict convergence_check(const std::optional<double>& relative_difference,
                                     double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw UsageError("convergence threshold must lie in (0, 1)");
  }
  ConvergenceVerdict v;
  v.relative_difference = relative_difference;
  std::ostringstream msg;
  if (!relative_difference) {
    v.status = ConvergenceVerdict::Status::rerun_advised;
    msg << "relative hypervolume difference undefined (hypervolume of psi0 is zero)";
  } else if (*relative_difference > threshold) {
    v.status = ConvergenceVerdict::Status::rerun_advised;
    msg << "relative hypervolume difference " << *relative_difference * 100.0
        << "% exceeds threshold " << threshold * 100.0 << "%";
  } else {
    v.status = ConvergenceVerdict::Status::converged;
    msg << "relative hypervolume difference " << *relative_difference * 100.0
        << "% within threshold " << threshold * 100.0 << "%";
  }
  v.diagnostic = msg.str();
  return v;
}

ConvergenceVerdict convergence_check(const RunSet& runs, double threshold) {
  return convergence_check(hypervolume_disparity(runs).relative_difference, threshold);
}

std::string to_string(ComparisonVerdict::Kind k) {
  switch (k) {
    case ComparisonVerdict::Kind::first_dominates: return "first_dominates";
    case ComparisonVerdict::Kind::second_dominates: return "second_dominates";
    case ComparisonVerdict::Kind::incomparable: break;
  }
  return "incomparable";
}

namespace {

bool dominated_by_any(const Solution& y, const Front& f) {
  for (const auto& x : f) {
    if (dominates(x.objectives.values(), y.objectives.values())) return true;
  }
  return false;
}

}  // namespace

ComparisonVerdict front_compare(const Front& a, const Front& b) {
  if (!a.empty() && !b.empty() && a.objective_count() != b.objective_count()) {
    throw UsageError("fronts have different objective counts");
  }
  ComparisonVerdict v;
  for (const auto& x : a) {
    if (!dominated_by_any(x, b)) v.first_witnesses.push_back(x);
  }
  for (const auto& y : b) {
    if (!dominated_by_any(y, a)) v.second_witnesses.push_back(y);
  }
  if (!b.empty() && v.second_witnesses.empty()) {
    v.kind = ComparisonVerdict::Kind::first_dominates;
  } else if (!a.empty() && v.first_witnesses.empty()) {
    v.kind = ComparisonVerdict::Kind::second_dominates;
  } else {
    v.kind = ComparisonVerdict::Kind::incomparable;
  }
  return v;
}

}  // namespace moa
