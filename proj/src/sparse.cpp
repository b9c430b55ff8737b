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

#include "semannot/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "semannot/error.hpp"

namespace semannot {

SparseVector SparseVector::from_map(const std::map<FeatureIndex, double>& entries,
                                    std::size_t dim) {
  SparseVector v(dim);
  v.indices_.reserve(entries.size());
  v.weights_.reserve(entries.size());
  for (const auto& [index, weight] : entries) {
    if (index >= dim) throw Error("sparse vector index out of range");
    if (weight == 0.0) continue;
    v.indices_.push_back(index);
    v.weights_.push_back(weight);
  }
  return v;
}

SparseVector SparseVector::from_sorted(std::vector<FeatureIndex> indices,
                                       std::vector<double> weights,
                                       std::size_t dim) {
  if (indices.size() != weights.size()) {
    throw Error("sparse vector: index/weight length mismatch");
  }
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= dim || (i > 0 && indices[i] <= indices[i - 1])) {
      throw Error("sparse vector: indices must be strictly increasing and below dim");
    }
    if (weights[i] == 0.0) throw Error("sparse vector: explicit zero weight");
  }
  SparseVector v(dim);
  v.indices_ = std::move(indices);
  v.weights_ = std::move(weights);
  return v;
}

double SparseVector::at(FeatureIndex feature) const {
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), feature);
  if (it == indices_.end() || *it != feature) return 0.0;
  return weights_[static_cast<std::size_t>(it - indices_.begin())];
}

double SparseVector::sum() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

double SparseVector::squared_norm() const {
  double s = 0.0;
  for (double w : weights_) s += w * w;
  return s;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

double dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.nnz() && j < b.nnz()) {
    if (a.index(i) < b.index(j)) {
      ++i;
    } else if (a.index(i) > b.index(j)) {
      ++j;
    } else {
      s += a.weight(i) * b.weight(j);
      ++i;
      ++j;
    }
  }
  return s;
}

double dot(const SparseVector& a, std::span<const double> dense) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.nnz(); ++i) {
    if (a.index(i) < dense.size()) s += a.weight(i) * dense[a.index(i)];
  }
  return s;
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

SparseVector l2_normalize(const SparseVector& v) {
  const double n = v.norm();
  if (n == 0.0) return v;
  return v.transformed([n](FeatureIndex, double w) { return w / n; });
}

SparseVector concat(const SparseVector& a, const SparseVector& b) {
  std::vector<FeatureIndex> indices(a.indices().begin(), a.indices().end());
  std::vector<double> weights(a.weights().begin(), a.weights().end());
  const auto shift = static_cast<FeatureIndex>(a.dim());
  for (std::size_t i = 0; i < b.nnz(); ++i) {
    indices.push_back(b.index(i) + shift);
    weights.push_back(b.weight(i));
  }
  return SparseVector::from_sorted(std::move(indices), std::move(weights),
                                   a.dim() + b.dim());
}

}  // namespace semannot
