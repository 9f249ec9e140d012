#include "moa/problems.hpp"

#include <cmath>

#include "moa/config.hpp"
#include "moa/errors.hpp"

namespace moa {

std::string to_string(Sense s) { return s == Sense::minimize ? "min" : "max"; }

Sense parse_sense(const std::string& s) {
  if (s == "min" || s == "minimize") return Sense::minimize;
  if (s == "max" || s == "maximize") return Sense::maximize;
  throw UsageError("sense must be 'min' or 'max', got '" + s + "'");
}

std::vector<double> to_internal(std::span<const Sense> senses, std::span<const double> physical) {
  if (senses.size() != physical.size()) throw UsageError("senses and values differ in length");
  std::vector<double> out(physical.begin(), physical.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (senses[i] == Sense::minimize) out[i] = -out[i];
  }
  return out;
}

std::vector<double> to_physical(std::span<const Sense> senses, std::span<const double> internal) {
  return to_internal(senses, internal);
}

std::vector<double> Problem::evaluate_internal(std::span<const double> x) const {
  const auto s = senses();
  return to_internal(s, evaluate_physical(x));
}

ObjectiveVector synthetic_biobjective(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw UsageError("synthetic_biobjective: x must lie in [0, 1], got " + std::to_string(x));
  }
  return ObjectiveVector{1.0 - x * x, 1.0 - (1.0 - x) * (1.0 - x)};
}

// With x = sqrt(1 - f1) on the front, f2 = 2 sqrt(1 - f1) - (1 - f1). The
// front spans f1, f2 in [0, 1]; for r <= 0 the dominated region is the area
// under the curve over [0, 1] plus the rectangles down to the reference.
double synthetic_biobjective_optimal_hypervolume(double r1, double r2) {
  if (r1 > 0.0 || r2 > 0.0) throw UsageError("reference must not exceed (0, 0)");
  constexpr double area_under_front = 5.0 / 6.0;
  return area_under_front + (-r1) * 1.0 + (-r2) * 1.0 + r1 * r2;
}

SyntheticBiobjective::SyntheticBiobjective() : space_({Bound{0.0, 1.0, "x", ""}}) {}

std::vector<double> SyntheticBiobjective::evaluate_physical(std::span<const double> x) const {
  if (x.size() != 1) throw UsageError("synthetic problem takes exactly one parameter");
  const auto f = synthetic_biobjective(x[0]);
  return {f[0], f[1]};
}

std::unique_ptr<Problem> make_problem(const std::string& name,
                                      const std::map<std::string, std::string>& settings) {
  if (name == "synthetic") {
    for (const auto& [k, v] : settings) {
      if (k == "eval_seed") continue;
      throw ConfigError("problem." + k + ": not a setting of problem 'synthetic'");
    }
    return std::make_unique<SyntheticBiobjective>();
  }
  if (name == "wta") return std::make_unique<WtaProblem>(wta_spec_from_settings(settings));
  throw ConfigError("problem.name: unknown problem '" + name + "' (known: synthetic, wta)");
}

}  // namespace moa
