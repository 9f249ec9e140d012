#include <algorithm>
#include <cmath>
#include <limits>

#include "moa/errors.hpp"
#include "moa/mining.hpp"
#include "moa/rng.hpp"

namespace moa {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
  return s;
}

std::size_t nearest(std::span<const double> x, const std::vector<std::vector<double>>& centroids) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(x, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

double wcss(PointsView samples, const std::vector<std::vector<double>>& centroids,
            const std::vector<std::size_t>& assignment) {
  double s = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    s += squared_distance(samples[i], centroids[assignment[i]]);
  }
  return s;
}

}  // namespace

ClusterAssignment kmeans(PointsView samples, std::size_t k, std::uint64_t seed,
                         std::size_t max_iters) {
  const std::size_t n = samples.size();
  if (k == 0) throw UsageError("kmeans needs k >= 1");
  if (k > n) {
    throw UsageError("kmeans needs k <= sample count (" + std::to_string(k) + " > " +
                     std::to_string(n) + ")");
  }
  for (double v : samples.data) {
    if (!std::isfinite(v)) throw UsageError("kmeans features must be finite");
  }

  ClusterAssignment out;
  out.k = k;
  CounterRng rng(seed, Stream::clustering);
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());
  std::size_t pick = rng.below(n);
  for (std::size_t c = 0; c < k; ++c) {
    out.centroids.emplace_back(samples[pick].begin(), samples[pick].end());
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], squared_distance(samples[i], out.centroids.back()));
    }
    pick = static_cast<std::size_t>(std::max_element(closest.begin(), closest.end()) - closest.begin());
  }

  out.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.assignment[i] = nearest(samples[i], out.centroids);

  const std::size_t dim = samples.dim;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::vector<std::size_t> sizes(k, 0);
    for (auto a : out.assignment) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[out.assignment[i]] < 2) continue;
        const double d = squared_distance(samples[i], out.centroids[out.assignment[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == n) continue;
      --sizes[out.assignment[far]];
      out.assignment[far] = c;
      sizes[c] = 1;
      ++out.reseeded_clusters;
    }

    for (auto& c : out.centroids) std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& c = out.centroids[out.assignment[i]];
      for (std::size_t j = 0; j < dim; ++j) c[j] += samples[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (auto& v : out.centroids[c]) v /= static_cast<double>(sizes[c]);
    }
    out.wcss_history.push_back(wcss(samples, out.centroids, out.assignment));
    out.iterations = iter + 1;

    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = nearest(samples[i], out.centroids);
      // Keep the current cluster on distance ties so the loop reaches a fixed point.
      if (a != out.assignment[i] &&
          squared_distance(samples[i], out.centroids[a]) <
              squared_distance(samples[i], out.centroids[out.assignment[i]])) {
        out.assignment[i] = a;
        changed = true;
      }
    }
    if (!changed) break;
  }
  out.wcss = wcss(samples, out.centroids, out.assignment);
  return out;
}

}  // namespace moa
