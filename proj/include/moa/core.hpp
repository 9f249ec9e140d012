#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace moa {

/// Objective values in the internal orientation: every objective is maximized.
/// Minimized quantities are stored negated.
class ObjectiveVector {
 public:
  ObjectiveVector() = default;
  /// Throws UsageError when a value is non-finite or fewer than two objectives are given.
  explicit ObjectiveVector(std::vector<double> values);
  ObjectiveVector(std::initializer_list<double> values)
      : ObjectiveVector(std::vector<double>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
  friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::vector<double> values_;
};

class ParameterVector {
 public:
  ParameterVector() = default;
  explicit ParameterVector(std::vector<double> values) : values_(std::move(values)) {}
  ParameterVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;

 private:
  std::vector<double> values_;
};

struct Bound {
  double lo = 0.0;
  double hi = 1.0;
  std::string name;
  std::string unit;

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Box-bounded parameter space.
class SearchSpace {
 public:
  SearchSpace() = default;
  /// Throws UsageError unless every bound is finite with lo < hi.
  explicit SearchSpace(std::vector<Bound> bounds);

  std::size_t dimension() const noexcept { return bounds_.size(); }
  const Bound& operator[](std::size_t i) const { return bounds_[i]; }
  const std::vector<Bound>& bounds() const noexcept { return bounds_; }
  bool contains(std::span<const double> x) const noexcept;
  double clip(std::size_t i, double v) const noexcept;
  std::string name(std::size_t i) const;

  friend bool operator==(const SearchSpace&, const SearchSpace&) = default;

 private:
  std::vector<Bound> bounds_;
};

struct Provenance {
  /// Run index, or kSynthetic for points that are not evaluated solutions
  /// (attainment-surface corners).
  std::int64_t run = 0;
  std::int64_t generation = 0;
  std::int64_t evaluation = 0;

  static constexpr std::int64_t kSynthetic = -1;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Solution {
  ParameterVector parameters;
  ObjectiveVector objectives;
  Provenance provenance;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Mutually non-dominated set of solutions. Objective-space duplicates with
/// distinct parameters are kept.
class Front {
 public:
  Front() = default;
  explicit Front(std::size_t objective_count) : objective_count_(objective_count) {}

  /// Validates mutual non-domination; throws UsageError otherwise.
  static Front from_members(std::vector<Solution> members);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t objective_count() const noexcept { return objective_count_; }
  const Solution& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Solution>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  /// Objective values as a row-major matrix (size() x objective_count()).
  std::vector<double> objective_matrix() const;

  friend bool operator==(const Front&, const Front&) = default;

 private:
  friend Front nondominated_filter(std::vector<Solution> solutions);
  Front(std::size_t n, std::vector<Solution> members)
      : objective_count_(n), members_(std::move(members)) {}

  std::size_t objective_count_ = 0;
  std::vector<Solution> members_;
};

// Raw span forms. Callers guarantee equal lengths.
bool dominates(std::span<const double> a, std::span<const double> b) noexcept;
bool weakly_dominates(std::span<const double> a, std::span<const double> b) noexcept;

/// a >= b componentwise and a > b somewhere (maximization).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);
bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Members of `solutions` not dominated by any other member, in input order.
Front nondominated_filter(std::vector<Solution> solutions);

/// Some member of `front` weakly dominates z.
bool attains(const Front& front, const ObjectiveVector& z);

/// Wraps a bare objective vector as a synthetic solution with no parameters.
Solution synthetic_point(ObjectiveVector objectives);

}  // namespace moa
