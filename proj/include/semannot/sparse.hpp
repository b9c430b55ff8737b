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

#ifndef SEMANNOT_SPARSE_HPP_
#define SEMANNOT_SPARSE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace semannot {

using FeatureIndex = std::uint32_t;

// Sparse vector over a fixed feature space. Indices are strictly increasing,
// below dim(), and no explicit zeros are stored.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}

  // Builds from an index->weight map; zero weights are dropped.
  static SparseVector from_map(const std::map<FeatureIndex, double>& entries,
                               std::size_t dim);
  // Builds from parallel arrays that must already be sorted and unique.
  static SparseVector from_sorted(std::vector<FeatureIndex> indices,
                                  std::vector<double> weights,
                                  std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }

  std::span<const FeatureIndex> indices() const { return indices_; }
  std::span<const double> weights() const { return weights_; }

  FeatureIndex index(std::size_t i) const { return indices_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  // Value at a feature (0 when absent). O(log nnz).
  double at(FeatureIndex feature) const;

  double sum() const;
  double squared_norm() const;
  double norm() const;

  // Applies fn(index, weight) -> new weight to every entry, dropping zeros.
  template <typename Fn>
  SparseVector transformed(Fn fn) const {
    SparseVector out(dim_);
    out.indices_.reserve(indices_.size());
    out.weights_.reserve(weights_.size());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      const double w = fn(indices_[i], weights_[i]);
      if (w != 0.0) {
        out.indices_.push_back(indices_[i]);
        out.weights_.push_back(w);
      }
    }
    return out;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<FeatureIndex> indices_;
  std::vector<double> weights_;
};

double dot(const SparseVector& a, const SparseVector& b);
// Dot product against a dense weight array (length must cover a.dim()).
double dot(const SparseVector& a, std::span<const double> dense);

// Cosine similarity; 0 when either side is the zero vector.
double cosine_similarity(const SparseVector& a, const SparseVector& b);

// Scales a nonzero vector to unit Euclidean norm; the zero vector is returned unchanged.
SparseVector l2_normalize(const SparseVector& v);

// Concatenates two feature blocks: b's indices are shifted by a.dim().
// The result is not renormalized.
SparseVector concat(const SparseVector& a, const SparseVector& b);

}  // namespace semannot

#endif  // SEMANNOT_SPARSE_HPP_
