#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "moa/errors.hpp"
#include "moa/mining.hpp"

namespace moa {

double gini(std::span<const std::uint64_t> counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total == 0.0) return 0.0;
  double s = 1.0;
  for (auto c : counts) {
    const double p = static_cast<double>(c) / total;
    s -= p * p;
  }
  return s;
}

std::vector<LabeledSample> balance_by_replication(std::vector<LabeledSample> samples,
                                                  std::uint64_t factor, std::size_t target_class) {
  if (factor < 1) throw UsageError("replication factor must be >= 1");
  for (auto& s : samples) {
    if (s.label == target_class) s.weight *= factor;
  }
  return samples;
}

std::vector<std::uint64_t> class_weights(std::span<const LabeledSample> samples,
                                         std::size_t class_count) {
  std::vector<std::uint64_t> w(class_count, 0);
  for (const auto& s : samples) {
    if (s.label >= class_count) throw UsageError("label out of range");
    w[s.label] += s.weight;
  }
  return w;
}

namespace {

std::size_t majority(const std::vector<std::uint64_t>& counts) {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double child_impurity = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(std::span<const LabeledSample> samples, std::size_t classes, const CartConfig& config)
      : samples_(samples), classes_(classes), config_(config) {}

  std::vector<TreeNode> build() {
    std::vector<std::size_t> all(samples_.size());
    std::iota(all.begin(), all.end(), 0);
    grow(all, 0);
    return std::move(nodes_);
  }

 private:
  std::vector<std::uint64_t> counts_of(const std::vector<std::size_t>& idx) const {
    std::vector<std::uint64_t> c(classes_, 0);
    for (auto i : idx) c[samples_[i].label] += samples_[i].weight;
    return c;
  }

  Split best_split(const std::vector<std::size_t>& idx, const std::vector<std::uint64_t>& parent) const {
    Split best;
    const std::uint64_t total = std::accumulate(parent.begin(), parent.end(), std::uint64_t{0});
    const std::size_t features = samples_[idx.front()].features.size();
    std::vector<std::size_t> order = idx;
    for (std::size_t f = 0; f < features; ++f) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples_[a].features[f] < samples_[b].features[f];
      });
      std::vector<std::uint64_t> left(classes_, 0);
      std::uint64_t left_total = 0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const auto& s = samples_[order[k]];
        left[s.label] += s.weight;
        left_total += s.weight;
        const double here = s.features[f];
        const double next = samples_[order[k + 1]].features[f];
        if (!(here < next)) continue;
        const std::uint64_t right_total = total - left_total;
        if (left_total < config_.min_samples_leaf || right_total < config_.min_samples_leaf) continue;
        std::vector<std::uint64_t> right(classes_);
        for (std::size_t c = 0; c < classes_; ++c) right[c] = parent[c] - left[c];
        const double impurity =
            (static_cast<double>(left_total) * gini(left) + static_cast<double>(right_total) * gini(right)) /
            static_cast<double>(total);
        if (!best.found || impurity < best.child_impurity) {
          double mid = 0.5 * (here + next);
          if (!(mid < next)) mid = here;
          best = Split{true, f, mid, impurity};
        }
      }
    }
    return best;
  }

  std::size_t grow(const std::vector<std::size_t>& idx, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    TreeNode node;
    node.counts = counts_of(idx);
    node.label = majority(node.counts);
    node.impurity = gini(node.counts);
    nodes_[id] = node;

    if (depth >= config_.max_depth || node.impurity == 0.0) return id;
    const auto split = best_split(idx, node.counts);
    if (!split.found) return id;
    const double decrease = node.impurity - split.child_impurity;
    if (!(decrease > 0.0) || decrease < config_.min_impurity_decrease) return id;

    std::vector<std::size_t> left, right;
    for (auto i : idx) {
      (samples_[i].features[split.feature] <= split.threshold ? left : right).push_back(i);
    }
    const std::size_t l = grow(left, depth + 1);
    const std::size_t r = grow(right, depth + 1);
    auto& n = nodes_[id];
    n.leaf = false;
    n.feature = split.feature;
    n.threshold = split.threshold;
    n.left = l;
    n.right = r;
    return id;
  }

  std::span<const LabeledSample> samples_;
  std::size_t classes_;
  const CartConfig& config_;
  std::vector<TreeNode> nodes_;
};

std::string fmt_number(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string feature_label(std::span<const std::string> names, std::size_t f) {
  return f < names.size() ? names[f] : "x" + std::to_string(f);
}

std::string class_label(std::span<const std::string> names, std::size_t c) {
  return c < names.size() ? names[c] : std::to_string(c);
}

}  // namespace

DecisionTree cart_train(std::span<const LabeledSample> samples, const CartConfig& config) {
  if (samples.empty()) throw UsageError("cart_train needs at least one sample");
  const std::size_t features = samples.front().features.size();
  std::size_t classes = 0;
  for (const auto& s : samples) {
    if (s.features.size() != features) throw UsageError("samples have mixed feature counts");
    if (s.weight < 1) throw UsageError("sample weights must be >= 1");
    for (double v : s.features) {
      if (!std::isfinite(v)) throw UsageError("cart_train features must be finite");
    }
    classes = std::max(classes, s.label + 1);
  }
  classes = std::max<std::size_t>(classes, 2);
  auto nodes = TreeBuilder(samples, classes, config).build();
  DecisionTree provisional(nodes, features, 1.0);

  std::uint64_t correct = 0, total = 0;
  for (const auto& s : samples) {
    total += s.weight;
    if (provisional.classify(s.features) == s.label) correct += s.weight;
  }
  return DecisionTree(std::move(nodes), features,
                      static_cast<double>(correct) / static_cast<double>(total));
}

std::size_t DecisionTree::classify(std::span<const double> features) const {
  if (features.size() != feature_count_) {
    throw UsageError("expected " + std::to_string(feature_count_) + " features, got " +
                     std::to_string(features.size()));
  }
  for (double v : features) {
    if (!std::isfinite(v)) throw UsageError("cannot classify a non-finite feature");
  }
  std::size_t id = 0;
  while (!nodes_[id].leaf) {
    const auto& n = nodes_[id];
    id = features[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes_[id].label;
}

std::size_t DecisionTree::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes_[id].leaf) {
      stack.emplace_back(nodes_[id].left, d + 1);
      stack.emplace_back(nodes_[id].right, d + 1);
    }
  }
  return best;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.leaf; }));
}

std::vector<TreeRule> DecisionTree::rules(std::span<const std::string> feature_names) const {
  struct Interval {
    std::size_t feature;
    std::optional<double> above;     // strict lower bound
    std::optional<double> at_most;   // inclusive upper bound
  };
  std::vector<TreeRule> out;

  auto walk = [&](auto&& self, std::size_t id, std::vector<Interval> path) -> void {
    const auto& n = nodes_[id];
    if (n.leaf) {
      std::string text;
      for (const auto& iv : path) {
        if (!text.empty()) text += " and ";
        const auto name = feature_label(feature_names, iv.feature);
        if (iv.above) text += fmt_number(*iv.above) + " < ";
        text += name;
        if (iv.at_most) text += " ≤ " + fmt_number(*iv.at_most);
      }
      if (text.empty()) text = "always";
      out.push_back(TreeRule{text, n.label, n.counts});
      return;
    }
    auto find = [&](std::vector<Interval>& p) -> Interval& {
      for (auto& iv : p) {
        if (iv.feature == n.feature) return iv;
      }
      p.push_back(Interval{n.feature, std::nullopt, std::nullopt});
      return p.back();
    };
    auto left = path;
    auto& l = find(left);
    l.at_most = l.at_most ? std::min(*l.at_most, n.threshold) : n.threshold;
    self(self, n.left, std::move(left));
    auto right = path;
    auto& r = find(right);
    r.above = r.above ? std::max(*r.above, n.threshold) : n.threshold;
    self(self, n.right, std::move(right));
  };
  walk(walk, 0, {});
  return out;
}

std::string DecisionTree::rules_text(std::span<const std::string> feature_names,
                                     std::span<const std::string> class_names) const {
  std::ostringstream os;
  os << "# training accuracy " << fmt_number(accuracy_ * 100.0) << "% (weighted, on training set)\n";
  for (const auto& rule : rules(feature_names)) {
    os << "IF " << rule.text << " THEN " << class_label(class_names, rule.label) << " [";
    for (std::size_t c = 0; c < rule.counts.size(); ++c) {
      if (c) os << ", ";
      os << class_label(class_names, c) << "=" << rule.counts[c];
    }
    os << "]\n";
  }
  return os.str();
}

std::string DecisionTree::to_dot(std::span<const std::string> feature_names,
                                 std::span<const std::string> class_names) const {
  std::ostringstream os;
  os << "digraph tree {\n";
  os << "  node [shape=box];\n";
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    os << "  n" << id << " [label=\"";
    if (!n.leaf) {
      os << feature_label(feature_names, n.feature) << " ≤ " << fmt_number(n.threshold) << "\\n";
    }
    os << "class=" << class_label(class_names, n.label) << "\\ncounts=[";
    for (std::size_t c = 0; c < n.counts.size(); ++c) os << (c ? "," : "") << n.counts[c];
    os << "]\\ngini=" << fmt_number(n.impurity) << "\"];\n";
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    if (n.leaf) continue;
    os << "  n" << id << " -> n" << n.left << " [label=\"≤ " << fmt_number(n.threshold) << "\"];\n";
    os << "  n" << id << " -> n" << n.right << " [label=\"> " << fmt_number(n.threshold) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace moa
