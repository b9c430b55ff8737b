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

#ifndef SEMANNOT_MULTILABEL_HPP_
#define SEMANNOT_MULTILABEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semannot/decision_tree.hpp"
#include "semannot/labels.hpp"

namespace semannot {

// Labels whose per-label classifier voted positive.
LabelSet binary_relevance_decide(std::span<const std::uint8_t> decisions);

// Labels with score strictly above theta.
LabelSet threshold_decide(std::span<const double> scores, double theta = 0.2);

// Per-label decision trees over (confidence score, rank position) of a base
// ranking, restricted to the base top-m labels.
class StackedModel {
 public:
  static constexpr std::size_t kDefaultTopM = 30;

  StackedModel(std::size_t top_m, std::size_t cutoff,
               std::vector<std::optional<DecisionTree>> trees);

  // One meta-sample per (training document, label in its top-m); target is
  // gold membership. Labels never reaching a top-m get no tree.
  static StackedModel fit(std::span<const Ranking> base_rankings, const LabelMatrix& gold,
                          std::size_t top_m = kDefaultTopM, const TreeConfig& tree = {});

  // Tree verdicts for labels in the top-m; labels without a tree are kept
  // iff their rank is within the cutoff. Nothing outside the top-m is assigned.
  LabelSet decide(const Ranking& ranking) const;

  std::size_t top_m() const { return top_m_; }
  std::size_t cutoff() const { return cutoff_; }
  const std::vector<std::optional<DecisionTree>>& trees() const { return trees_; }

 private:
  std::size_t top_m_;
  std::size_t cutoff_;
  std::vector<std::optional<DecisionTree>> trees_;
};

}  // namespace semannot

#endif  // SEMANNOT_MULTILABEL_HPP_
