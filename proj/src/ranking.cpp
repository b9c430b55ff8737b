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

#include "semannot/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "semannot/error.hpp"

namespace semannot {

std::vector<double> label_priors(const LabelMatrix& labels) {
  std::vector<double> priors(labels.n_labels, 0.0);
  if (labels.n_docs() == 0) return priors;
  for (const auto& row : labels.rows) {
    for (const auto l : row) priors[l] += 1.0;
  }
  for (auto& p : priors) p /= static_cast<double>(labels.n_docs());
  return priors;
}

CandidateSet generate_candidates(const SparseVector& x, const KnnIndex& index,
                                 const LabelMatrix& labels, std::span<const double> priors,
                                 std::size_t k, std::optional<std::size_t> exclude) {
  const auto neighbors = index.nearest(x, k, exclude);
  std::map<LabelIndex, Candidate> by_label;
  for (const auto& n : neighbors) {
    for (const auto l : labels.rows[n.ordinal]) {
      auto [it, inserted] = by_label.try_emplace(l, Candidate{l, {0.0, 0.0, priors[l], n.similarity}});
      auto& f = it->second.features;
      f[0] += n.similarity;
      f[1] += 1.0;
      f[3] = std::max(f[3], n.similarity);
    }
  }
  CandidateSet set;
  set.candidates.reserve(by_label.size());
  for (auto& [label, c] : by_label) set.candidates.push_back(c);
  return set;
}

std::size_t cutoff_from_mean(double mean_labels_per_doc) {
  const auto rounded = static_cast<std::size_t>(std::floor(mean_labels_per_doc + 0.5));
  return std::max<std::size_t>(1, rounded);
}

RankerModel::RankerModel(std::array<double, 4> mean, std::array<double, 4> scale,
                         BinaryLinear linear, std::size_t cutoff)
    : mean_(mean), scale_(scale), linear_(std::move(linear)), cutoff_(cutoff) {
  if (cutoff_ == 0) throw ConfigError("ranker: cutoff must be at least 1");
  if (linear_.w.size() != 4) throw Error("ranker: expected 4 feature weights");
}

SparseVector RankerModel::standardized(const Candidate& c) const {
  std::map<FeatureIndex, double> z;
  for (std::size_t i = 0; i < 4; ++i) {
    z[static_cast<FeatureIndex>(i)] = (c.features[i] - mean_[i]) * scale_[i];
  }
  return SparseVector::from_map(z, 4);
}

RankerModel RankerModel::fit(std::span<const CandidateSet> candidates,
                             std::span<const LabelSet> gold, const LinearConfig& config,
                             std::size_t cutoff) {
  if (candidates.size() != gold.size()) throw Error("ranker: gold sets do not align");
  std::vector<const Candidate*> samples;
  std::vector<std::int8_t> targets;
  for (std::size_t d = 0; d < candidates.size(); ++d) {
    for (const auto& c : candidates[d].candidates) {
      samples.push_back(&c);
      targets.push_back(std::binary_search(gold[d].begin(), gold[d].end(), c.label) ? 1 : -1);
    }
  }
  if (std::find(targets.begin(), targets.end(), 1) == targets.end()) {
    throw Error("ranker: no relevant candidates in the training data");
  }
  std::array<double, 4> mean{}, scale{};
  const double n = static_cast<double>(samples.size());
  for (const auto* c : samples) {
    for (std::size_t i = 0; i < 4; ++i) mean[i] += c->features[i] / n;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    double ss = 0.0;
    for (const auto* c : samples) ss += (c->features[i] - mean[i]) * (c->features[i] - mean[i]);
    const double sd = std::sqrt(ss / n);
    scale[i] = sd > 1e-12 ? 1.0 / sd : 0.0;
  }
  RankerModel model(mean, scale, BinaryLinear{std::vector<double>(4, 0.0), 0.0}, cutoff);
  std::vector<SparseVector> x;
  x.reserve(samples.size());
  for (const auto* c : samples) x.push_back(model.standardized(*c));
  const auto orders = presentation_orders(x.size(), config.epochs, config.seed);
  model.linear_ = train_binary(x, targets, config, orders);
  return model;
}

double RankerModel::score(const Candidate& c) const { return linear_.decision(standardized(c)); }

Ranking RankerModel::rank(const CandidateSet& set) const {
  Ranking ranking;
  ranking.reserve(set.candidates.size());
  for (const auto& c : set.candidates) ranking.push_back({c.label, score(c)});
  sort_ranking(ranking);
  return ranking;
}

LabelSet RankerModel::rank_and_cut(const CandidateSet& set) const {
  const auto ranking = rank(set);
  LabelSet out;
  for (std::size_t i = 0; i < ranking.size() && i < cutoff_; ++i) out.push_back(ranking[i].label);
  std::sort(out.begin(), out.end());
  return out;
}

L2rModel::L2rModel(KnnIndex index, LabelMatrix labels, std::size_t k, RankerModel ranker)
    : index_(std::move(index)),
      labels_(std::move(labels)),
      priors_(label_priors(labels_)),
      k_(k),
      ranker_(std::move(ranker)) {
  if (k_ == 0) throw ConfigError("l2r: k must be at least 1");
}

L2rModel L2rModel::fit(std::span<const SparseVector> x, const LabelMatrix& y, std::size_t k,
                       const LinearConfig& config) {
  if (x.size() != y.n_docs()) throw Error("l2r: labels do not align with vectors");
  KnnIndex index(std::vector<SparseVector>(x.begin(), x.end()));
  const auto priors = label_priors(y);
  std::vector<CandidateSet> sets;
  sets.reserve(x.size());
  // Leave-one-out: a training document is not its own neighbor.
  for (std::size_t d = 0; d < x.size(); ++d) {
    sets.push_back(generate_candidates(x[d], index, y, priors, k, d));
  }
  auto ranker = RankerModel::fit(sets, y.rows, config, cutoff_from_mean(y.mean_labels_per_doc()));
  return L2rModel(std::move(index), y, k, std::move(ranker));
}

CandidateSet L2rModel::candidates(const SparseVector& x) const {
  return generate_candidates(x, index_, labels_, priors_, k_);
}

Ranking L2rModel::rank(const SparseVector& x) const { return ranker_.rank(candidates(x)); }

LabelSet L2rModel::decide(const SparseVector& x) const {
  return ranker_.rank_and_cut(candidates(x));
}

}  // namespace semannot
