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

#ifndef SEMANNOT_RANKING_HPP_
#define SEMANNOT_RANKING_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semannot/knn.hpp"
#include "semannot/labels.hpp"
#include "semannot/linear.hpp"

namespace semannot {

// Neighborhood features of one candidate label.
struct Candidate {
  LabelIndex label;
  // 0: sum of neighbor similarities carrying the label
  // 1: number of neighbors carrying the label
  // 2: training prior of the label
  // 3: maximum similarity among neighbors carrying the label
  std::array<double, 4> features;
};

// Candidates ordered by label index.
struct CandidateSet {
  std::vector<Candidate> candidates;
};

// Fraction of training documents carrying each label.
std::vector<double> label_priors(const LabelMatrix& labels);

// Candidate labels = union of the gold labels of the k nearest training
// documents (k clamped to the index size). `exclude` drops the query's own
// training ordinal when generating training candidates.
CandidateSet generate_candidates(const SparseVector& x, const KnnIndex& index,
                                 const LabelMatrix& labels, std::span<const double> priors,
                                 std::size_t k, std::optional<std::size_t> exclude = std::nullopt);

// Position of the average label count, rounded half up, at least 1.
std::size_t cutoff_from_mean(double mean_labels_per_doc);

// Pointwise logistic ranker over standardized candidate features, cut off at
// a fixed list length.
class RankerModel {
 public:
  RankerModel(std::array<double, 4> mean, std::array<double, 4> scale, BinaryLinear linear,
              std::size_t cutoff);

  // Candidates are relevant iff they are in the document's gold set.
  // Documents with no candidates are skipped.
  static RankerModel fit(std::span<const CandidateSet> candidates, std::span<const LabelSet> gold,
                         const LinearConfig& config, std::size_t cutoff);

  double score(const Candidate& c) const;
  // All candidates by descending score, ties broken by label index.
  Ranking rank(const CandidateSet& set) const;
  // The top `cutoff` labels of the ranking (all of them when fewer).
  LabelSet rank_and_cut(const CandidateSet& set) const;

  std::size_t cutoff() const { return cutoff_; }
  const std::array<double, 4>& mean() const { return mean_; }
  const std::array<double, 4>& scale() const { return scale_; }
  const BinaryLinear& linear() const { return linear_; }

 private:
  SparseVector standardized(const Candidate& c) const;

  std::array<double, 4> mean_;
  std::array<double, 4> scale_;  // 1 / sd, or 0 for a constant feature
  BinaryLinear linear_;
  std::size_t cutoff_;
};

// Learning-to-rank classifier: kNN candidate generation + ranker + cutoff.
class L2rModel {
 public:
  L2rModel(KnnIndex index, LabelMatrix labels, std::size_t k, RankerModel ranker);

  static L2rModel fit(std::span<const SparseVector> x, const LabelMatrix& y, std::size_t k,
                      const LinearConfig& config);

  CandidateSet candidates(const SparseVector& x) const;
  Ranking rank(const SparseVector& x) const;
  LabelSet decide(const SparseVector& x) const;

  std::size_t k() const { return k_; }
  const KnnIndex& index() const { return index_; }
  const LabelMatrix& labels() const { return labels_; }
  const RankerModel& ranker() const { return ranker_; }

 private:
  KnnIndex index_;
  LabelMatrix labels_;
  std::vector<double> priors_;
  std::size_t k_;
  RankerModel ranker_;
};

}  // namespace semannot

#endif  // SEMANNOT_RANKING_HPP_
