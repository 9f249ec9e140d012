#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "moa/errors.hpp"
#include "moa/indicators.hpp"
#include "moa/mining.hpp"

namespace moa {

std::optional<double> lag1_autocorrelation(std::span<const double> seq) {
  if (seq.size() < 3) throw UsageError("autocorrelation needs at least 3 values");
  const std::size_t n = seq.size() - 1;
  const auto head = seq.first(n);
  const auto tail = seq.subspan(1, n);
  const double mh = std::accumulate(head.begin(), head.end(), 0.0) / static_cast<double>(n);
  const double mt = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = head[i] - mh;
    const double dy = tail[i] - mt;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> parameter_autocorrelation(const Front& front, std::size_t param,
                                                std::size_t order_by) {
  if (front.size() < 3) throw UsageError("autocorrelation needs a front of at least 3 members");
  if (order_by >= front.objective_count()) throw UsageError("ordering objective out of range");
  std::vector<std::size_t> order(front.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return front[a].objectives[order_by] > front[b].objectives[order_by];
  });
  std::vector<double> seq;
  seq.reserve(order.size());
  for (auto i : order) {
    if (param >= front[i].parameters.size()) throw UsageError("parameter index out of range");
    seq.push_back(front[i].parameters[param]);
  }
  return lag1_autocorrelation(seq);
}

PNorm parse_pnorm(const std::string& s) {
  if (s == "1") return PNorm::one;
  if (s == "2") return PNorm::two;
  if (s == "inf" || s == "infinity" || s == "Inf") return PNorm::infinity;
  throw UsageError("p-norm must be 1, 2 or inf, got '" + s + "'");
}

std::string to_string(PNorm p) {
  switch (p) {
    case PNorm::one: return "1";
    case PNorm::two: return "2";
    case PNorm::infinity: break;
  }
  return "inf";
}

CompromiseResult select_compromise(const Front& front, PNorm p) {
  if (front.empty()) throw UsageError("cannot select a compromise from an empty front");
  const auto lo = nadir(front);
  const auto hi = ideal(front);
  CompromiseResult out;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (!(hi[j] > lo[j])) out.dropped_objectives.push_back(j);
  }
  if (!out.dropped_objectives.empty()) {
    std::cerr << "warning: " << out.dropped_objectives.size()
              << " objective(s) constant on the front; dropped from the compromise distance\n";
  }

  auto distance = [&](const ObjectiveVector& f) {
    double acc = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      if (!(hi[j] > lo[j])) continue;
      const double gap = 1.0 - (f[j] - lo[j]) / (hi[j] - lo[j]);
      switch (p) {
        case PNorm::one: acc += std::abs(gap); break;
        case PNorm::two: acc += gap * gap; break;
        case PNorm::infinity: acc = std::max(acc, std::abs(gap)); break;
      }
    }
    return p == PNorm::two ? std::sqrt(acc) : acc;
  };

  constexpr double kTieTolerance = 1e-12;
  std::size_t best = 0;
  double best_d = distance(front[0].objectives);
  for (std::size_t i = 1; i < front.size(); ++i) {
    const double d = distance(front[i].objectives);
    const bool tie = std::abs(d - best_d) <= kTieTolerance * std::max(1.0, best_d);
    if ((!tie && d < best_d) || (tie && front[i].objectives > front[best].objectives)) {
      best = i;
      best_d = d;
    }
  }
  out.index = best;
  out.solution = front[best];
  out.distance = distance(front[best].objectives);
  return out;
}

NeighborhoodResult select_neighborhood(const Front& front, std::span<const Sense> senses,
                                       std::size_t objective, double rel_tol, Sense sense) {
  if (front.empty()) throw UsageError("neighborhood of an empty front");
  if (!(rel_tol > 0.0)) throw UsageError("neighborhood tolerance must be positive");
  if (objective >= front.objective_count() || senses.size() != front.objective_count()) {
    throw UsageError("objective index or senses do not match the front");
  }
  auto physical = [&](const Solution& s) {
    const double v = s.objectives[objective];
    return senses[objective] == Sense::minimize ? -v : v;
  };

  NeighborhoodResult out;
  out.best = physical(front[0]);
  for (const auto& m : front) {
    out.best = sense == Sense::minimize ? std::min(out.best, physical(m)) : std::max(out.best, physical(m));
  }
  if (out.best == 0.0) {
    out.absolute_fallback = true;
    std::cerr << "warning: best value is 0; using an absolute tolerance of " << rel_tol << "\n";
    out.cutoff = sense == Sense::minimize ? rel_tol : -rel_tol;
  } else {
    const double slack = std::abs(out.best) * rel_tol;
    out.cutoff = sense == Sense::minimize ? out.best + slack : out.best - slack;
  }
  std::vector<Solution> kept;
  for (const auto& m : front) {
    const double v = physical(m);
    if (sense == Sense::minimize ? v <= out.cutoff : v >= out.cutoff) kept.push_back(m);
  }
  out.members = Front::from_members(std::move(kept));
  return out;
}

}  // namespace moa
