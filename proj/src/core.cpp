#include "moa/core.hpp"

#include <cmath>
#include <sstream>

#include "moa/errors.hpp"

namespace moa {

ObjectiveVector::ObjectiveVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw UsageError("objective vector needs at least 2 objectives, got " +
                     std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw UsageError("objective " + std::to_string(i) + " is not finite");
    }
  }
}

SearchSpace::SearchSpace(std::vector<Bound> bounds) : bounds_(std::move(bounds)) {
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    const auto& b = bounds_[i];
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi)) {
      std::ostringstream msg;
      msg << "bound " << i << " must be finite with lo < hi, got [" << b.lo << ", " << b.hi
          << "]";
      throw UsageError(msg.str());
    }
  }
}

bool SearchSpace::contains(std::span<const double> x) const noexcept {
  if (x.size() != bounds_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= bounds_[i].lo && x[i] <= bounds_[i].hi)) return false;
  }
  return true;
}

double SearchSpace::clip(std::size_t i, double v) const noexcept {
  const auto& b = bounds_[i];
  if (v < b.lo) return b.lo;
  if (v > b.hi) return b.hi;
  return v;
}

std::string SearchSpace::name(std::size_t i) const {
  const auto& n = bounds_.at(i).name;
  return n.empty() ? "x" + std::to_string(i) : n;
}

bool dominates(std::span<const double> a, std::span<const double> b) noexcept {
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly_better = true;
  }
  return strictly_better;
}

bool weakly_dominates(std::span<const double> a, std::span<const double> b) noexcept {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

namespace {

void require_same_length(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw UsageError("objective length mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_length(a, b);
  return dominates(a.values(), b.values());
}

bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  require_same_length(a, b);
  return weakly_dominates(a.values(), b.values());
}

Front nondominated_filter(std::vector<Solution> solutions) {
  if (solutions.empty()) return Front{};
  const std::size_t n = solutions.front().objectives.size();
  for (const auto& s : solutions) {
    if (s.objectives.size() != n) throw UsageError("solutions have mixed objective counts");
  }
  std::vector<char> keep(solutions.size(), 1);
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    for (std::size_t j = 0; j < solutions.size(); ++j) {
      if (i != j && dominates(solutions[j].objectives.values(), solutions[i].objectives.values())) {
        keep[i] = 0;
        break;
      }
    }
  }
  std::vector<Solution> members;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    if (keep[i]) members.push_back(std::move(solutions[i]));
  }
  return Front(n, std::move(members));
}

Front Front::from_members(std::vector<Solution> members) {
  if (members.empty()) return Front{};
  const std::size_t n = members.front().objectives.size();
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].objectives.size() != n) throw UsageError("front members have mixed objective counts");
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (i != j && dominates(members[j].objectives.values(), members[i].objectives.values())) {
        throw UsageError("front member " + std::to_string(i) + " is dominated by member " +
                         std::to_string(j));
      }
    }
  }
  return Front(n, std::move(members));
}

std::vector<double> Front::objective_matrix() const {
  std::vector<double> out;
  out.reserve(members_.size() * objective_count_);
  for (const auto& m : members_) out.insert(out.end(), m.objectives.begin(), m.objectives.end());
  return out;
}

bool attains(const Front& front, const ObjectiveVector& z) {
  if (!front.empty() && front.objective_count() != z.size()) {
    throw UsageError("objective length mismatch: front has " +
                     std::to_string(front.objective_count()) + ", point has " +
                     std::to_string(z.size()));
  }
  for (const auto& m : front) {
    if (weakly_dominates(m.objectives.values(), z.values())) return true;
  }
  return false;
}

Solution synthetic_point(ObjectiveVector objectives) {
  Solution s;
  s.objectives = std::move(objectives);
  s.provenance = {Provenance::kSynthetic, 0, 0};
  return s;
}

}  // namespace moa
