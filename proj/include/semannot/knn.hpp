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

#ifndef SEMANNOT_KNN_HPP_
#define SEMANNOT_KNN_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "semannot/labels.hpp"
#include "semannot/sparse.hpp"

namespace semannot {

struct Neighbor {
  std::size_t ordinal;
  double similarity;  // cosine; 1 - similarity is the cosine distance
};

// Brute-force cosine search through an inverted index. Stored vectors are kept
// verbatim; zero vectors (query or stored) have similarity 0 to everything.
class KnnIndex {
 public:
  KnnIndex() = default;
  explicit KnnIndex(std::vector<SparseVector> vectors);

  std::size_t size() const { return vectors_.size(); }
  std::size_t dim() const { return dim_; }
  const SparseVector& vector(std::size_t i) const { return vectors_[i]; }
  const std::vector<SparseVector>& vectors() const { return vectors_; }

  // Cosine similarity of the query to every stored vector.
  std::vector<double> similarities(const SparseVector& query) const;

  // The k most similar vectors, by descending similarity then ascending
  // ordinal. k is clamped to the number of candidates; `exclude` removes one
  // ordinal (leave-one-out).
  std::vector<Neighbor> nearest(const SparseVector& query, std::size_t k,
                                std::optional<std::size_t> exclude = std::nullopt) const;

 private:
  struct Posting {
    std::uint32_t ordinal;
    double weight;
  };

  std::vector<SparseVector> vectors_;
  std::vector<double> norms_;
  std::vector<std::vector<Posting>> postings_;
  std::size_t dim_ = 0;
};

struct KnnPrediction {
  LabelSet labels;
  bool zero_query = false;
};

// Lazy multi-label kNN. With k = 1 the prediction is the label set of the
// nearest training document; for k > 1 each label is voted on separately and
// kept when more than half of the neighbors carry it.
class KnnModel {
 public:
  KnnModel(std::vector<SparseVector> vectors, LabelMatrix labels, std::size_t k = 1);

  KnnPrediction predict(const SparseVector& x) const;

  std::size_t k() const { return k_; }
  const KnnIndex& index() const { return index_; }
  const LabelMatrix& labels() const { return labels_; }

 private:
  KnnIndex index_;
  LabelMatrix labels_;
  std::size_t k_;
};

}  // namespace semannot

#endif  // SEMANNOT_KNN_HPP_
