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

#include "semannot/multilabel.hpp"

#include <algorithm>
#include <array>

#include "semannot/error.hpp"
#include "semannot/ranking.hpp"

namespace semannot {

LabelSet binary_relevance_decide(std::span<const std::uint8_t> decisions) {
  LabelSet out;
  for (std::size_t l = 0; l < decisions.size(); ++l) {
    if (decisions[l] != 0) out.push_back(static_cast<LabelIndex>(l));
  }
  return out;
}

LabelSet threshold_decide(std::span<const double> scores, double theta) {
  LabelSet out;
  for (std::size_t l = 0; l < scores.size(); ++l) {
    if (scores[l] > theta) out.push_back(static_cast<LabelIndex>(l));
  }
  return out;
}

StackedModel::StackedModel(std::size_t top_m, std::size_t cutoff,
                           std::vector<std::optional<DecisionTree>> trees)
    : top_m_(top_m), cutoff_(cutoff), trees_(std::move(trees)) {
  if (top_m_ == 0) throw ConfigError("stacking: top_m must be at least 1");
}

StackedModel StackedModel::fit(std::span<const Ranking> base_rankings, const LabelMatrix& gold,
                               std::size_t top_m, const TreeConfig& tree) {
  if (base_rankings.size() != gold.n_docs()) throw Error("stacking: rankings do not align with gold");
  std::vector<std::vector<double>> features(gold.n_labels);
  std::vector<std::vector<std::uint8_t>> targets(gold.n_labels);
  for (std::size_t d = 0; d < base_rankings.size(); ++d) {
    const auto& ranking = base_rankings[d];
    for (std::size_t r = 0; r < ranking.size() && r < top_m; ++r) {
      const LabelIndex l = ranking[r].label;
      if (l >= gold.n_labels) throw Error("stacking: ranked label out of range");
      features[l].push_back(ranking[r].score);
      features[l].push_back(static_cast<double>(r + 1));
      targets[l].push_back(gold.has(d, l) ? 1 : 0);
    }
  }
  std::vector<std::optional<DecisionTree>> trees(gold.n_labels);
  for (std::size_t l = 0; l < gold.n_labels; ++l) {
    if (targets[l].empty()) continue;
    trees[l] = DecisionTree::fit(features[l], 2, targets[l], tree);
  }
  return StackedModel(top_m, cutoff_from_mean(gold.mean_labels_per_doc()), std::move(trees));
}

LabelSet StackedModel::decide(const Ranking& ranking) const {
  LabelSet out;
  for (std::size_t r = 0; r < ranking.size() && r < top_m_; ++r) {
    const LabelIndex l = ranking[r].label;
    const std::size_t rank = r + 1;
    bool assign = false;
    if (l < trees_.size() && trees_[l]) {
      const std::array<double, 2> x{ranking[r].score, static_cast<double>(rank)};
      assign = trees_[l]->predict(x);
    } else {
      assign = rank <= cutoff_;
    }
    if (assign) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace semannot
