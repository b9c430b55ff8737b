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

#include "semannot/rocchio.hpp"

#include <map>

#include "semannot/error.hpp"

namespace semannot {

RocchioModel::RocchioModel(std::vector<SparseVector> centroids)
    : centroids_(std::move(centroids)) {}

RocchioModel RocchioModel::fit(std::span<const SparseVector> x, const LabelMatrix& y) {
  if (x.empty()) throw Error("rocchio: empty training set");
  if (x.size() != y.n_docs()) throw Error("rocchio: labels do not align with vectors");
  const std::size_t dim = x.front().dim();
  std::vector<std::map<FeatureIndex, double>> sums(y.n_labels);
  std::vector<std::size_t> counts(y.n_labels, 0);
  for (std::size_t d = 0; d < x.size(); ++d) {
    for (const auto l : y.rows[d]) {
      ++counts[l];
      auto& sum = sums[l];
      for (std::size_t j = 0; j < x[d].nnz(); ++j) sum[x[d].index(j)] += x[d].weight(j);
    }
  }
  std::vector<SparseVector> centroids;
  centroids.reserve(y.n_labels);
  for (std::size_t l = 0; l < y.n_labels; ++l) {
    if (counts[l] == 0) throw Error("rocchio: label without training documents");
    const double n = static_cast<double>(counts[l]);
    for (auto& [f, w] : sums[l]) w /= n;
    centroids.push_back(SparseVector::from_map(sums[l], dim));
  }
  return RocchioModel(std::move(centroids));
}

Ranking RocchioModel::rank(const SparseVector& x) const {
  const auto sims = centroids_.similarities(x);
  Ranking ranking;
  ranking.reserve(sims.size());
  for (std::size_t l = 0; l < sims.size(); ++l) {
    ranking.push_back({static_cast<LabelIndex>(l), sims[l]});
  }
  sort_ranking(ranking);
  return ranking;
}

}  // namespace semannot
