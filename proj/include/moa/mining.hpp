#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moa/core.hpp"
#include "moa/kernels.hpp"
#include "moa/problems.hpp"

namespace moa {

// ---------------------------------------------------------------------------
// k-means

struct ClusterAssignment {
  std::size_t k = 0;
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> assignment;
  double wcss = 0.0;
  /// Within-cluster sum of squares after every Lloyd iteration.
  std::vector<double> wcss_history;
  std::size_t iterations = 0;
  std::size_t reseeded_clusters = 0;
};

/// Lloyd iteration from deterministic farthest-point seeding. The first centre
/// is drawn from `seed`; every later one is the sample farthest from the
/// centres chosen so far. An empty cluster is re-seeded from the sample
/// farthest from its current centre.
ClusterAssignment kmeans(PointsView samples, std::size_t k, std::uint64_t seed = 0,
                         std::size_t max_iters = 100);

// ---------------------------------------------------------------------------
// Labelled samples and CART

struct LabeledSample {
  std::vector<double> features;
  std::size_t label = 0;
  std::uint64_t weight = 1;
};

/// Multiplies the weight of every sample of `target_class` by `factor`.
std::vector<LabeledSample> balance_by_replication(std::vector<LabeledSample> samples,
                                                  std::uint64_t factor, std::size_t target_class);

/// Total weight per class, indexed by label.
std::vector<std::uint64_t> class_weights(std::span<const LabeledSample> samples,
                                         std::size_t class_count);

struct CartConfig {
  std::size_t max_depth = 5;
  /// Minimum total weight on each side of a split.
  std::uint64_t min_samples_leaf = 5;
  double min_impurity_decrease = 1e-4;
};

struct TreeNode {
  bool leaf = true;
  std::size_t feature = 0;
  double threshold = 0.0;
  std::size_t left = 0;   // x[feature] <= threshold
  std::size_t right = 0;  // x[feature] > threshold
  std::size_t label = 0;
  std::vector<std::uint64_t> counts;  // weighted class counts
  double impurity = 0.0;
};

struct TreeRule {
  std::string text;
  std::size_t label = 0;
  std::vector<std::uint64_t> counts;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::size_t feature_count, double training_accuracy)
      : nodes_(std::move(nodes)), feature_count_(feature_count), accuracy_(training_accuracy) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t feature_count() const noexcept { return feature_count_; }
  std::size_t depth() const;
  std::size_t leaf_count() const;
  /// Weighted accuracy on the training set.
  double training_accuracy() const noexcept { return accuracy_; }

  /// Throws UsageError for a wrong length or non-finite feature.
  std::size_t classify(std::span<const double> features) const;

  /// One conjunction per leaf with per-feature intervals merged, features in
  /// root-first order, e.g. "0.48 < p_DI and r_TWi <= -5.85".
  std::vector<TreeRule> rules(std::span<const std::string> feature_names) const;
  std::string rules_text(std::span<const std::string> feature_names,
                         std::span<const std::string> class_names) const;
  std::string to_dot(std::span<const std::string> feature_names,
                     std::span<const std::string> class_names) const;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t feature_count_ = 0;
  double accuracy_ = 1.0;
};

/// Greedy weighted-Gini splitting with midpoint thresholds.
DecisionTree cart_train(std::span<const LabeledSample> samples, const CartConfig& config = {});

inline std::size_t cart_classify(const DecisionTree& tree, std::span<const double> features) {
  return tree.classify(features);
}

/// Weighted Gini impurity of class counts.
double gini(std::span<const std::uint64_t> counts);

// ---------------------------------------------------------------------------
// Front-level analyses

/// Pearson correlation between consecutive values of `param` along the front
/// sorted by objective `order_by` (best first). Empty when a lagged series
/// has zero variance. Throws UsageError for fewer than 3 members.
std::optional<double> parameter_autocorrelation(const Front& front, std::size_t param,
                                                std::size_t order_by = 0);

/// Lag-1 Pearson correlation of a plain sequence.
std::optional<double> lag1_autocorrelation(std::span<const double> sequence);

enum class PNorm { one, two, infinity };

PNorm parse_pnorm(const std::string& s);
std::string to_string(PNorm p);

struct CompromiseResult {
  Solution solution;
  std::size_t index = 0;
  double distance = 0.0;
  /// Objectives dropped because ideal equals nadir on the front.
  std::vector<std::size_t> dropped_objectives;
};

/// Member closest (in L^p, after per-front ideal/nadir normalization) to the
/// normalized ideal point; ties go to the lexicographically larger objective vector.
CompromiseResult select_compromise(const Front& front, PNorm p = PNorm::two);

struct NeighborhoodResult {
  Front members;
  double best = 0.0;
  double cutoff = 0.0;
  bool absolute_fallback = false;
};

/// Members within a relative tolerance of the best value of one objective,
/// judged on its physical scale (senses undo the internal negation).
NeighborhoodResult select_neighborhood(const Front& front, std::span<const Sense> senses,
                                       std::size_t objective, double rel_tol, Sense sense);

}  // namespace moa
