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

#include "semannot/knn.hpp"

#include <algorithm>
#include <map>

#include "semannot/error.hpp"

namespace semannot {

KnnIndex::KnnIndex(std::vector<SparseVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw Error("knn: empty training set");
  dim_ = vectors_.front().dim();
  postings_.resize(dim_);
  norms_.reserve(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    const auto& v = vectors_[i];
    if (v.dim() != dim_) throw Error("knn: inconsistent training dimensions");
    norms_.push_back(v.norm());
    for (std::size_t j = 0; j < v.nnz(); ++j) {
      postings_[v.index(j)].push_back({static_cast<std::uint32_t>(i), v.weight(j)});
    }
  }
}

std::vector<double> KnnIndex::similarities(const SparseVector& query) const {
  if (query.dim() != dim_) throw Error("knn: query dimension mismatch");
  std::vector<double> sims(vectors_.size(), 0.0);
  const double qnorm = query.norm();
  if (qnorm == 0.0) return sims;
  for (std::size_t j = 0; j < query.nnz(); ++j) {
    const double qw = query.weight(j);
    for (const auto& p : postings_[query.index(j)]) sims[p.ordinal] += qw * p.weight;
  }
  for (std::size_t i = 0; i < sims.size(); ++i) {
    sims[i] = norms_[i] == 0.0 ? 0.0 : sims[i] / (qnorm * norms_[i]);
  }
  return sims;
}

std::vector<Neighbor> KnnIndex::nearest(const SparseVector& query, std::size_t k,
                                        std::optional<std::size_t> exclude) const {
  const auto sims = similarities(query);
  std::vector<Neighbor> all;
  all.reserve(sims.size());
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (exclude && *exclude == i) continue;
    all.push_back({i, sims[i]});
  }
  k = std::min(k, all.size());
  auto closer = [](const Neighbor& a, const Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.ordinal < b.ordinal;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), closer);
  all.resize(k);
  return all;
}

KnnModel::KnnModel(std::vector<SparseVector> vectors, LabelMatrix labels, std::size_t k)
    : index_(std::move(vectors)), labels_(std::move(labels)), k_(k) {
  if (k_ == 0) throw ConfigError("knn: k must be at least 1");
  if (labels_.n_docs() != index_.size()) throw Error("knn: labels do not align with vectors");
}

KnnPrediction KnnModel::predict(const SparseVector& x) const {
  KnnPrediction out;
  out.zero_query = x.empty();
  const auto neighbors = index_.nearest(x, k_);
  if (neighbors.size() == 1) {
    out.labels = labels_.rows[neighbors.front().ordinal];
    return out;
  }
  std::map<LabelIndex, std::size_t> votes;
  for (const auto& n : neighbors) {
    for (const auto l : labels_.rows[n.ordinal]) ++votes[l];
  }
  for (const auto& [label, count] : votes) {
    if (2 * count > neighbors.size()) out.labels.push_back(label);
  }
  return out;
}

}  // namespace semannot
