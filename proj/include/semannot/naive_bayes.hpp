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

#ifndef SEMANNOT_NAIVE_BAYES_HPP_
#define SEMANNOT_NAIVE_BAYES_HPP_

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "semannot/labels.hpp"
#include "semannot/sparse.hpp"

namespace semannot {

enum class NbVariant { kBernoulli, kMultinomial };

// Naive Bayes over raw counts with Lidstone smoothing. Each label is a
// one-vs-rest problem: the positive class is estimated from the documents
// carrying the label, the negative class from all others.
class NaiveBayesModel {
 public:
  struct LabelStats {
    std::vector<std::pair<FeatureIndex, double>> feature_counts;  // df or tf, sorted
    double docs = 0.0;
    double total = 0.0;  // sum of tf (multinomial)
  };

  static constexpr double kDefaultAlpha = 1e-5;

  NaiveBayesModel(NbVariant variant, double alpha, std::size_t dim, double n_docs,
                  std::vector<double> feature_totals, std::vector<LabelStats> labels);

  static NaiveBayesModel fit(std::span<const SparseVector> counts, const LabelMatrix& y,
                             NbVariant variant, double alpha = kDefaultAlpha);

  // log P(c) + log P(x | c) for every label, best first.
  Ranking rank(const SparseVector& x) const;
  // log P(c | x) - log P(not c | x) per label.
  std::vector<double> log_odds(const SparseVector& x) const;
  // Labels whose one-vs-rest log-odds are positive.
  LabelSet decide(const SparseVector& x) const;

  // Smoothed positive-class parameter: P(feature present | c) for Bernoulli,
  // the multinomial feature probability otherwise.
  double feature_probability(LabelIndex label, FeatureIndex feature) const;

  NbVariant variant() const { return variant_; }
  double alpha() const { return alpha_; }
  std::size_t dim() const { return dim_; }
  std::size_t n_labels() const { return labels_.size(); }
  double n_docs() const { return n_docs_; }
  const std::vector<double>& feature_totals() const { return feature_totals_; }
  const std::vector<LabelStats>& label_stats() const { return labels_; }

 private:
  struct Cache {
    double log_prior_pos = 0.0;
    double log_prior_neg = 0.0;
    double base_pos = 0.0;  // Bernoulli: sum_f log(1 - p_cf)
    double base_neg = 0.0;
    double denom_pos = 0.0;
    double denom_neg = 0.0;
  };

  void precompute();
  double label_count(LabelIndex label, FeatureIndex feature) const;
  std::pair<double, double> log_likelihoods(LabelIndex label, const SparseVector& x) const;

  NbVariant variant_;
  double alpha_;
  std::size_t dim_;
  double n_docs_;
  double grand_total_ = 0.0;
  std::vector<double> feature_totals_;
  std::vector<LabelStats> labels_;
  std::vector<Cache> cache_;
};

}  // namespace semannot

#endif  // SEMANNOT_NAIVE_BAYES_HPP_
