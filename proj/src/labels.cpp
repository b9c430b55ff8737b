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

#include "semannot/labels.hpp"

#include <algorithm>
#include <set>

#include "semannot/error.hpp"

namespace semannot {

LabelSpace::LabelSpace(std::vector<ConceptId> ids) : ids_(std::move(ids)) {
  if (!std::is_sorted(ids_.begin(), ids_.end())) throw Error("label space ids must be sorted");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], static_cast<LabelIndex>(i)).second) {
      throw Error("label space: duplicate id " + ids_[i]);
    }
  }
}

LabelSpace LabelSpace::from_documents(std::span<const Document> docs) {
  std::set<ConceptId> ids;
  for (const auto& d : docs) ids.insert(d.gold_labels.begin(), d.gold_labels.end());
  return LabelSpace(std::vector<ConceptId>(ids.begin(), ids.end()));
}

std::optional<LabelIndex> LabelSpace::index(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LabelSet LabelSpace::encode(std::span<const ConceptId> ids) const {
  LabelSet out;
  for (const auto& id : ids) {
    if (const auto idx = index(id)) out.push_back(*idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ConceptId> LabelSpace::decode(const LabelSet& labels) const {
  std::vector<ConceptId> out;
  out.reserve(labels.size());
  for (const auto l : labels) out.push_back(ids_.at(l));
  return out;
}

LabelMatrix LabelMatrix::build(std::span<const Document> docs, const LabelSpace& space) {
  LabelMatrix m;
  m.n_labels = space.size();
  m.rows.reserve(docs.size());
  for (const auto& d : docs) m.rows.push_back(space.encode(d.gold_labels));
  return m;
}

bool LabelMatrix::has(std::size_t doc, LabelIndex label) const {
  const auto& row = rows[doc];
  return std::binary_search(row.begin(), row.end(), label);
}

double LabelMatrix::mean_labels_per_doc() const {
  if (rows.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  return static_cast<double>(total) / static_cast<double>(rows.size());
}

void sort_ranking(Ranking& ranking) {
  std::sort(ranking.begin(), ranking.end(), [](const ScoredLabel& a, const ScoredLabel& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
}

}  // namespace semannot
