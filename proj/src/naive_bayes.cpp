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

#include "semannot/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "semannot/error.hpp"

namespace semannot {

NaiveBayesModel::NaiveBayesModel(NbVariant variant, double alpha, std::size_t dim,
                                 double n_docs, std::vector<double> feature_totals,
                                 std::vector<LabelStats> labels)
    : variant_(variant),
      alpha_(alpha),
      dim_(dim),
      n_docs_(n_docs),
      feature_totals_(std::move(feature_totals)),
      labels_(std::move(labels)) {
  if (alpha_ <= 0.0) throw ConfigError("naive bayes: smoothing must be positive");
  if (feature_totals_.size() != dim_) throw Error("naive bayes: feature totals size mismatch");
  for (double t : feature_totals_) grand_total_ += t;
  precompute();
}

NaiveBayesModel NaiveBayesModel::fit(std::span<const SparseVector> counts, const LabelMatrix& y,
                                     NbVariant variant, double alpha) {
  if (counts.empty()) throw Error("naive bayes: empty training set");
  if (counts.size() != y.n_docs()) throw Error("naive bayes: labels do not align with vectors");
  const std::size_t dim = counts.front().dim();
  const bool bernoulli = variant == NbVariant::kBernoulli;
  std::vector<double> totals(dim, 0.0);
  std::vector<std::map<FeatureIndex, double>> per_label(y.n_labels);
  std::vector<LabelStats> stats(y.n_labels);
  for (std::size_t d = 0; d < counts.size(); ++d) {
    const auto& x = counts[d];
    if (x.dim() != dim) throw Error("naive bayes: inconsistent dimensions");
    for (std::size_t j = 0; j < x.nnz(); ++j) {
      const double v = bernoulli ? (x.weight(j) > 0.0 ? 1.0 : 0.0) : x.weight(j);
      totals[x.index(j)] += v;
    }
    for (const auto l : y.rows[d]) {
      stats[l].docs += 1.0;
      auto& m = per_label[l];
      for (std::size_t j = 0; j < x.nnz(); ++j) {
        const double v = bernoulli ? (x.weight(j) > 0.0 ? 1.0 : 0.0) : x.weight(j);
        if (v == 0.0) continue;
        m[x.index(j)] += v;
        stats[l].total += v;
      }
    }
  }
  for (std::size_t l = 0; l < y.n_labels; ++l) {
    if (stats[l].docs == 0.0) throw Error("naive bayes: label without training documents");
    stats[l].feature_counts.assign(per_label[l].begin(), per_label[l].end());
  }
  return NaiveBayesModel(variant, alpha, dim, static_cast<double>(counts.size()),
                         std::move(totals), std::move(stats));
}

void NaiveBayesModel::precompute() {
  cache_.assign(labels_.size(), Cache{});
  const double dim = static_cast<double>(dim_);
  for (std::size_t l = 0; l < labels_.size(); ++l) {
    const LabelStats& s = labels_[l];
    Cache& c = cache_[l];
    const double neg_docs = n_docs_ - s.docs;
    c.log_prior_pos = std::log(s.docs / n_docs_);
    c.log_prior_neg = neg_docs > 0.0 ? std::log(neg_docs / n_docs_)
                                     : -std::numeric_limits<double>::infinity();
    if (variant_ == NbVariant::kMultinomial) {
      c.denom_pos = s.total + alpha_ * dim;
      c.denom_neg = (grand_total_ - s.total) + alpha_ * dim;
      continue;
    }
    c.denom_pos = s.docs + 2.0 * alpha_;
    c.denom_neg = neg_docs + 2.0 * alpha_;
    // Features never seen with the label share one probability.
    const double p0 = alpha_ / c.denom_pos;
    double base_pos = (dim - static_cast<double>(s.feature_counts.size())) * std::log1p(-p0);
    for (const auto& [f, df] : s.feature_counts) base_pos += std::log1p(-(df + alpha_) / c.denom_pos);
    double base_neg = 0.0;
    auto it = s.feature_counts.begin();
    for (std::size_t f = 0; f < dim_; ++f) {
      double in_label = 0.0;
      if (it != s.feature_counts.end() && it->first == f) in_label = (it++)->second;
      base_neg += std::log1p(-(feature_totals_[f] - in_label + alpha_) / c.denom_neg);
    }
    c.base_pos = base_pos;
    c.base_neg = base_neg;
  }
}

double NaiveBayesModel::label_count(LabelIndex label, FeatureIndex feature) const {
  const auto& fc = labels_[label].feature_counts;
  const auto it = std::lower_bound(fc.begin(), fc.end(), feature,
                                   [](const auto& p, FeatureIndex f) { return p.first < f; });
  return (it != fc.end() && it->first == feature) ? it->second : 0.0;
}

double NaiveBayesModel::feature_probability(LabelIndex label, FeatureIndex feature) const {
  return (label_count(label, feature) + alpha_) / cache_[label].denom_pos;
}

std::pair<double, double> NaiveBayesModel::log_likelihoods(LabelIndex label,
                                                           const SparseVector& x) const {
  if (x.dim() != dim_) throw Error("naive bayes: dimension mismatch");
  const Cache& c = cache_[label];
  double pos = 0.0;
  double neg = 0.0;
  if (variant_ == NbVariant::kMultinomial) {
    for (std::size_t j = 0; j < x.nnz(); ++j) {
      const FeatureIndex f = x.index(j);
      const double tf = x.weight(j);
      const double in_label = label_count(label, f);
      pos += tf * std::log((in_label + alpha_) / c.denom_pos);
      neg += tf * std::log((feature_totals_[f] - in_label + alpha_) / c.denom_neg);
    }
    return {pos, neg};
  }
  pos = c.base_pos;
  neg = c.base_neg;
  for (std::size_t j = 0; j < x.nnz(); ++j) {
    if (x.weight(j) <= 0.0) continue;
    const FeatureIndex f = x.index(j);
    const double in_label = label_count(label, f);
    const double p = (in_label + alpha_) / c.denom_pos;
    const double q = (feature_totals_[f] - in_label + alpha_) / c.denom_neg;
    pos += std::log(p) - std::log1p(-p);
    neg += std::log(q) - std::log1p(-q);
  }
  return {pos, neg};
}

Ranking NaiveBayesModel::rank(const SparseVector& x) const {
  Ranking ranking;
  ranking.reserve(labels_.size());
  for (std::size_t l = 0; l < labels_.size(); ++l) {
    const auto label = static_cast<LabelIndex>(l);
    ranking.push_back({label, cache_[l].log_prior_pos + log_likelihoods(label, x).first});
  }
  sort_ranking(ranking);
  return ranking;
}

std::vector<double> NaiveBayesModel::log_odds(const SparseVector& x) const {
  std::vector<double> out(labels_.size());
  for (std::size_t l = 0; l < labels_.size(); ++l) {
    const Cache& c = cache_[l];
    if (std::isinf(c.log_prior_neg)) {
      out[l] = std::numeric_limits<double>::infinity();
      continue;
    }
    const auto [pos, neg] = log_likelihoods(static_cast<LabelIndex>(l), x);
    out[l] = (c.log_prior_pos + pos) - (c.log_prior_neg + neg);
  }
  return out;
}

LabelSet NaiveBayesModel::decide(const SparseVector& x) const {
  const auto odds = log_odds(x);
  LabelSet out;
  for (std::size_t l = 0; l < odds.size(); ++l) {
    if (odds[l] > 0.0) out.push_back(static_cast<LabelIndex>(l));
  }
  return out;
}

}  // namespace semannot
