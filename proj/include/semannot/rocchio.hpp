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

#ifndef SEMANNOT_ROCCHIO_HPP_
#define SEMANNOT_ROCCHIO_HPP_

#include <span>
#include <vector>

#include "semannot/knn.hpp"
#include "semannot/labels.hpp"

namespace semannot {

// Nearest-centroid ranker: one centroid (mean training vector) per label,
// labels ranked by cosine similarity to the query (score = 1 - distance).
class RocchioModel {
 public:
  explicit RocchioModel(std::vector<SparseVector> centroids);

  static RocchioModel fit(std::span<const SparseVector> x, const LabelMatrix& y);

  Ranking rank(const SparseVector& x) const;

  std::size_t n_labels() const { return centroids_.size(); }
  const SparseVector& centroid(LabelIndex label) const { return centroids_.vector(label); }
  const std::vector<SparseVector>& centroids() const { return centroids_.vectors(); }

 private:
  KnnIndex centroids_;
};

}  // namespace semannot

#endif  // SEMANNOT_ROCCHIO_HPP_
