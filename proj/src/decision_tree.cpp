// Copyright 2026 The Semannot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semannot/decision_tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "semannot/error.hpp"

namespace semannot {

double gini_impurity(std::size_t n_positive, std::size_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(n_positive) / static_cast<double>(n);
  return 2.0 * p * (1.0 - p);
}

DecisionTree::DecisionTree(std::size_t n_features, std::vector<Node> nodes)
    : n_features_(n_features), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error("decision tree: no nodes");
  // Children follow their parent, so traversal always terminates.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    const bool leaf = n.left < 0;
    if (!leaf && (n.feature < 0 || static_cast<std::size_t>(n.feature) >= n_features_ ||
                  static_cast<std::size_t>(n.left) <= i || static_cast<std::size_t>(n.right) <= i ||
                  static_cast<std::size_t>(n.left) >= nodes_.size() ||
                  static_cast<std::size_t>(n.right) >= nodes_.size())) {
      throw Error("decision tree: malformed node");
    }
  }
}

DecisionTree DecisionTree::fit(std::span<const double> features, std::size_t n_features,
                               std::span<const std::uint8_t> targets, const TreeConfig& config) {
  if (n_features == 0 || features.size() != targets.size() * n_features) {
    throw Error("decision tree: feature matrix shape mismatch");
  }
  if (targets.empty()) throw Error("decision tree: no samples");
  const std::size_t min_leaf = std::max<std::size_t>(1, config.min_leaf);
  std::vector<Node> nodes;
  auto value = [&](std::size_t sample, std::size_t f) { return features[sample * n_features + f]; };

  std::function<int(std::vector<std::size_t>&, std::size_t)> grow =
      [&](std::vector<std::size_t>& samples, std::size_t depth) -> int {
    Node node;
    node.n_samples = samples.size();
    for (const auto s : samples) node.n_positive += targets[s] ? 1 : 0;
    node.positive = 2 * node.n_positive > node.n_samples;
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(node);

    const double parent = gini_impurity(node.n_positive, node.n_samples);
    if (parent == 0.0 || depth >= config.max_depth || samples.size() < 2 * min_leaf) return id;

    const double n = static_cast<double>(samples.size());
    double best = parent;
    int best_feature = -1;
    double best_threshold = 0.0;
    std::vector<std::size_t> sorted = samples;
    for (std::size_t f = 0; f < n_features; ++f) {
      std::stable_sort(sorted.begin(), sorted.end(),
                       [&](std::size_t a, std::size_t b) { return value(a, f) < value(b, f); });
      std::size_t left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        ++left_n;
        left_pos += targets[sorted[i]] ? 1 : 0;
        const double v = value(sorted[i], f);
        if (v == value(sorted[i + 1], f)) continue;  // split only between distinct values
        const std::size_t right_n = sorted.size() - left_n;
        if (left_n < min_leaf || right_n < min_leaf) continue;
        const std::size_t right_pos = node.n_positive - left_pos;
        const double impurity = (static_cast<double>(left_n) * gini_impurity(left_pos, left_n) +
                                 static_cast<double>(right_n) * gini_impurity(right_pos, right_n)) / n;
        if (impurity < best - 1e-12) {
          best = impurity;
          best_feature = static_cast<int>(f);
          best_threshold = v;
        }
      }
    }
    if (best_feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (const auto s : samples) {
      (value(s, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right).push_back(s);
    }
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    nodes[static_cast<std::size_t>(id)].feature = best_feature;
    nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  };

  std::vector<std::size_t> all(targets.size());
  std::iota(all.begin(), all.end(), 0);
  grow(all, 0);
  return DecisionTree(n_features, std::move(nodes));
}

bool DecisionTree::predict(std::span<const double> x) const {
  if (x.size() != n_features_) throw Error("decision tree: feature count mismatch");
  std::size_t i = 0;
  while (nodes_[i].left >= 0) {
    const auto& n = nodes_[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes_[i].positive;
}

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(std::size_t)> d = [&](std::size_t i) -> std::size_t {
    if (nodes_[i].left < 0) return 0;
    return 1 + std::max(d(static_cast<std::size_t>(nodes_[i].left)),
                        d(static_cast<std::size_t>(nodes_[i].right)));
  };
  return d(0);
}

}  // namespace semannot
