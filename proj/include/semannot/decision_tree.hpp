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

#ifndef SEMANNOT_DECISION_TREE_HPP_
#define SEMANNOT_DECISION_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace semannot {

struct TreeConfig {
  std::size_t max_depth = 10;
  std::size_t min_leaf = 1;
};

// Binary CART classifier with Gini impurity. Splits are `x[feature] <= threshold`
// with thresholds drawn from the observed values; the best split is found by
// an exact scan, ties broken by lower feature index then lower threshold.
// A node is split only when the split strictly lowers impurity.
class DecisionTree {
 public:
  struct Node {
    // Leaf when left < 0.
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    bool positive = false;  // majority class (ties -> negative)
    std::size_t n_samples = 0;
    std::size_t n_positive = 0;
  };

  DecisionTree() = default;
  DecisionTree(std::size_t n_features, std::vector<Node> nodes);

  // `features` is row-major with n_features columns.
  static DecisionTree fit(std::span<const double> features, std::size_t n_features,
                          std::span<const std::uint8_t> targets, const TreeConfig& config = {});

  bool predict(std::span<const double> x) const;

  std::size_t n_features() const { return n_features_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t depth() const;

 private:
  std::size_t n_features_ = 0;
  std::vector<Node> nodes_;
};

double gini_impurity(std::size_t n_positive, std::size_t n);

}  // namespace semannot

#endif  // SEMANNOT_DECISION_TREE_HPP_
