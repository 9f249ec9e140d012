#pragma once
// Brute-force references used by the tests. Deliberately naive: they share
// no code with the library beyond the data types.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "moa/core.hpp"

namespace oracle {

using Point = std::vector<double>;

inline bool dominates(const Point& a, const Point& b) {
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
    if (a[j] > b[j]) strict = true;
  }
  return strict;
}

inline bool weakly_dominates(const Point& a, const Point& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
  }
  return true;
}

/// Indices of points no other point dominates, in input order.
inline std::vector<std::size_t> pairwise_filter(const std::vector<Point>& pts) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pts.size() && !dominated; ++j) dominated = j != i && dominates(pts[j], pts[i]);
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

/// Peel non-dominated layers one at a time: O(N^3).
inline std::vector<std::size_t> peel_ranks(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> rank(n, std::numeric_limits<std::size_t>::max());
  std::size_t assigned = 0;
  for (std::size_t r = 0; assigned < n; ++r) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] != std::numeric_limits<std::size_t>::max()) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < n && !dominated; ++j) {
        dominated = rank[j] == std::numeric_limits<std::size_t>::max() && dominates(pts[j], pts[i]);
      }
      if (!dominated) layer.push_back(i);
    }
    for (auto i : layer) rank[i] = r;
    assigned += layer.size();
  }
  return rank;
}

/// Hypervolume by counting centres of a cells x cells grid over [ref, upper].
inline double grid_hypervolume_2d(const std::vector<Point>& pts, const Point& ref, const Point& upper,
                                  std::size_t cells) {
  const double wx = (upper[0] - ref[0]) / static_cast<double>(cells);
  const double wy = (upper[1] - ref[1]) / static_cast<double>(cells);
  // Per column, the highest y attained by points reaching that column centre.
  std::uint64_t count = 0;
  for (std::size_t cx = 0; cx < cells; ++cx) {
    const double x = ref[0] + (static_cast<double>(cx) + 0.5) * wx;
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      if (p[0] >= x) top = std::max(top, p[1]);
    }
    for (std::size_t cy = 0; cy < cells; ++cy) {
      const double y = ref[1] + (static_cast<double>(cy) + 0.5) * wy;
      if (y <= top) ++count;
    }
  }
  return static_cast<double>(count) * wx * wy;
}

/// Exact hypervolume by inclusion-exclusion over all subsets (tiny inputs only).
inline double inclusion_exclusion_hypervolume(const std::vector<Point>& pts, const Point& ref) {
  const std::size_t n = pts.size();
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Point meet(ref.size(), std::numeric_limits<double>::infinity());
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ++bits;
      for (std::size_t j = 0; j < ref.size(); ++j) meet[j] = std::min(meet[j], pts[i][j]);
    }
    double vol = 1.0;
    for (std::size_t j = 0; j < ref.size(); ++j) vol *= std::max(0.0, meet[j] - ref[j]);
    total += (bits % 2 ? 1.0 : -1.0) * vol;
  }
  return total;
}

/// Fraction of runs with a member weakly dominating z.
inline double attainment(const std::vector<std::vector<Point>>& runs, const Point& z) {
  std::size_t hit = 0;
  for (const auto& run : runs) {
    hit += std::any_of(run.begin(), run.end(), [&](const Point& p) { return weakly_dominates(p, z); });
  }
  return static_cast<double>(hit) / static_cast<double>(runs.size());
}

inline double euclid(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(s);
}

/// max over runs of min distance from q to that run.
inline double disparity(const Point& q, const std::vector<std::vector<Point>>& runs) {
  double worst = 0.0;
  for (const auto& run : runs) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : run) best = std::min(best, euclid(q, p));
    worst = std::max(worst, best);
  }
  return worst;
}

inline double gini(const std::vector<double>& counts) {
  double total = 0.0, sq = 0.0;
  for (double c : counts) total += c;
  if (total == 0.0) return 0.0;
  for (double c : counts) sq += (c / total) * (c / total);
  return 1.0 - sq;
}

struct Split {
  std::size_t feature = 0;
  double threshold = 0.0;
  double weighted_child_gini = std::numeric_limits<double>::infinity();
};

/// Tries every midpoint of every feature; ties keep the first found.
inline Split exhaustive_best_split(const std::vector<Point>& x, const std::vector<std::size_t>& y,
                                   std::size_t classes) {
  Split best;
  const double n = static_cast<double>(x.size());
  for (std::size_t f = 0; f < x[0].size(); ++f) {
    std::vector<double> values;
    for (const auto& row : x) values.push_back(row[f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      const double t = 0.5 * (values[v] + values[v + 1]);
      std::vector<double> left(classes, 0.0), right(classes, 0.0);
      for (std::size_t i = 0; i < x.size(); ++i) (x[i][f] <= t ? left : right)[y[i]] += 1.0;
      double nl = 0.0;
      for (double c : left) nl += c;
      const double g = nl / n * gini(left) + (n - nl) / n * gini(right);
      if (g < best.weighted_child_gini - 1e-12) best = Split{f, t, g};
    }
  }
  return best;
}

/// Lowest within-cluster sum of squares over every 2-partition (small n only).
inline double best_two_partition_wcss(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    double total = 0.0;
    for (int side = 0; side < 2; ++side) {
      Point c(pts[0].size(), 0.0);
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(mask >> i & 1) != side) continue;
        m += 1.0;
        for (std::size_t j = 0; j < c.size(); ++j) c[j] += pts[i][j];
      }
      for (auto& v : c) v /= m;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(mask >> i & 1) == side) total += euclid(pts[i], c) * euclid(pts[i], c);
      }
    }
    best = std::min(best, total);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Generators

inline std::vector<Point> random_points(std::mt19937_64& gen, std::size_t n, std::size_t dim, double lo,
                                        double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts(n, Point(dim));
  for (auto& p : pts) {
    for (auto& v : p) v = u(gen);
  }
  return pts;
}

/// Random points reduced to their non-dominated subset.
inline std::vector<Point> random_front(std::mt19937_64& gen, std::size_t n, std::size_t dim, double lo,
                                       double hi) {
  auto pts = random_points(gen, n, dim, lo, hi);
  std::vector<Point> out;
  for (auto i : pairwise_filter(pts)) out.push_back(pts[i]);
  return out;
}

/// Same, but with values snapped to a coarse lattice so ties occur often.
inline std::vector<Point> lattice_points(std::mt19937_64& gen, std::size_t n, std::size_t dim, int levels) {
  std::uniform_int_distribution<int> u(0, levels);
  std::vector<Point> pts(n, Point(dim));
  for (auto& p : pts) {
    for (auto& v : p) v = static_cast<double>(u(gen));
  }
  return pts;
}

inline std::vector<moa::Solution> as_solutions(const std::vector<Point>& pts, std::int64_t run = 0) {
  std::vector<moa::Solution> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back(moa::Solution{moa::ParameterVector{static_cast<double>(i)}, moa::ObjectiveVector(pts[i]),
                                moa::Provenance{run, 0, static_cast<std::int64_t>(i)}});
  }
  return out;
}

inline moa::Front as_front(const std::vector<Point>& pts, std::int64_t run = 0) {
  return moa::nondominated_filter(as_solutions(pts, run));
}

inline std::vector<Point> points_of(const moa::Front& f) {
  std::vector<Point> out;
  for (const auto& s : f) out.emplace_back(s.objectives.begin(), s.objectives.end());
  return out;
}

}  // namespace oracle
