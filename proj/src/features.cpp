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

#include "semannot/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <ostream>
#include <set>

#include <json.hpp>

#include "semannot/error.hpp"

namespace semannot {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<FeatureIndex>(i)).second) {
      throw Error("vocabulary: duplicate token " + tokens_[i]);
    }
  }
}

Vocabulary Vocabulary::fit(std::span<const TokenSequence> documents) {
  std::set<std::string> unique;
  for (const auto& doc : documents) unique.insert(doc.begin(), doc.end());
  return Vocabulary(std::vector<std::string>(unique.begin(), unique.end()));
}

std::optional<FeatureIndex> Vocabulary::index(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVector count_terms(const TokenSequence& tokens, const Vocabulary& vocab) {
  std::map<FeatureIndex, double> counts;
  for (const auto& t : tokens) {
    if (const auto idx = vocab.index(t)) counts[*idx] += 1.0;
  }
  return SparseVector::from_map(counts, vocab.size());
}

ConceptMatcher::ConceptMatcher(std::vector<ConceptPhrase> phrases, std::size_t n_concepts)
    : phrases_(std::move(phrases)), n_concepts_(n_concepts) {
  nodes_.emplace_back();
  for (const auto& p : phrases_) {
    if (p.concept_ordinal >= n_concepts_) throw Error("concept phrase owner out of range");
    if (!p.tokens.empty()) insert(p.tokens, p.concept_ordinal);
  }
  link();
}

ConceptMatcher ConceptMatcher::build(const Thesaurus& thesaurus, const Preprocessor& preprocess) {
  std::vector<ConceptPhrase> phrases;
  for (std::size_t c = 0; c < thesaurus.size(); ++c) {
    const Concept& concept_ = thesaurus.concept_at(c);
    phrases.push_back({c, preprocess(concept_.pref_label)});
    for (const auto& alt : concept_.alt_labels) phrases.push_back({c, preprocess(alt)});
  }
  std::erase_if(phrases, [](const ConceptPhrase& p) { return p.tokens.empty(); });
  return ConceptMatcher(std::move(phrases), thesaurus.size());
}

void ConceptMatcher::insert(const TokenSequence& phrase, std::size_t concept_ordinal) {
  std::uint32_t state = 0;
  for (const auto& token : phrase) {
    const auto [wit, _] = words_.try_emplace(token, static_cast<std::uint32_t>(words_.size()));
    const std::uint32_t word = wit->second;
    auto it = nodes_[state].next.find(word);
    if (it == nodes_[state].next.end()) {
      const auto child = static_cast<std::uint32_t>(nodes_.size());
      const std::uint32_t depth = nodes_[state].depth + 1;
      nodes_[state].next.emplace(word, child);
      nodes_.emplace_back();
      nodes_.back().depth = depth;
      state = child;
    } else {
      state = it->second;
    }
  }
  auto& owners = nodes_[state].concepts;
  if (std::find(owners.begin(), owners.end(), concept_ordinal) == owners.end()) {
    owners.push_back(concept_ordinal);
    std::sort(owners.begin(), owners.end());
  }
}

void ConceptMatcher::link() {
  std::deque<std::uint32_t> queue;
  for (const auto& [word, child] : nodes_[0].next) {
    nodes_[child].fail = 0;
    nodes_[child].output = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    for (const auto& [word, v] : nodes_[u].next) {
      std::uint32_t f = nodes_[u].fail;
      while (f != 0 && !nodes_[f].next.count(word)) f = nodes_[f].fail;
      const auto it = nodes_[f].next.find(word);
      const std::uint32_t target = (it != nodes_[f].next.end() && it->second != v) ? it->second : 0;
      nodes_[v].fail = target;
      nodes_[v].output = nodes_[target].concepts.empty() ? nodes_[target].output : target;
      queue.push_back(v);
    }
  }
}

std::uint32_t ConceptMatcher::step(std::uint32_t state, std::uint32_t word) const {
  while (true) {
    const auto it = nodes_[state].next.find(word);
    if (it != nodes_[state].next.end()) return it->second;
    if (state == 0) return 0;
    state = nodes_[state].fail;
  }
}

SparseVector ConceptMatcher::extract(const TokenSequence& tokens) const {
  const std::size_t n = tokens.size();
  // Longest phrase starting at each position, as (length, accepting node).
  std::vector<std::uint32_t> best_len(n, 0);
  std::vector<std::uint32_t> best_node(n, 0);

  std::uint32_t state = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto wit = words_.find(tokens[i]);
    state = wit == words_.end() ? 0 : step(state, wit->second);
    std::uint32_t u = nodes_[state].concepts.empty() ? nodes_[state].output : state;
    while (u != 0) {
      const std::uint32_t len = nodes_[u].depth;
      const std::size_t start = i + 1 - len;
      if (len > best_len[start]) {
        best_len[start] = len;
        best_node[start] = u;
      }
      u = nodes_[u].output;
    }
  }

  std::map<FeatureIndex, double> counts;
  for (std::size_t pos = 0; pos < n;) {
    if (best_len[pos] == 0) {
      ++pos;
      continue;
    }
    for (const auto c : nodes_[best_node[pos]].concepts) counts[static_cast<FeatureIndex>(c)] += 1.0;
    pos += best_len[pos];
  }
  return SparseVector::from_map(counts, n_concepts_);
}

WeightingModel fit_weighting(std::span<const SparseVector> documents, Weighting scheme,
                             double bm25_k, double bm25_b) {
  if (documents.empty()) throw Error("fit_weighting: empty training set");
  const std::size_t dim = documents.front().dim();
  std::vector<std::size_t> df(dim, 0);
  double total_len = 0.0;
  for (const auto& v : documents) {
    if (v.dim() != dim) throw Error("fit_weighting: inconsistent dimensions");
    for (std::size_t i = 0; i < v.nnz(); ++i) {
      if (v.weight(i) > 0.0) ++df[v.index(i)];
    }
    total_len += v.sum();
  }
  WeightingModel model;
  model.scheme = scheme;
  model.bm25_k = bm25_k;
  model.bm25_b = bm25_b;
  model.n_docs = documents.size();
  model.mean_doc_len = total_len / static_cast<double>(documents.size());
  model.idf.resize(dim);
  const double numerator = static_cast<double>(documents.size()) + 1.0;
  for (std::size_t f = 0; f < dim; ++f) {
    model.idf[f] = 1.0 + std::log(numerator / (static_cast<double>(df[f]) + 1.0));
  }
  return model;
}

SparseVector apply_weighting(const SparseVector& v, const WeightingModel& model) {
  if (v.dim() != model.dim()) throw Error("apply_weighting: dimension mismatch");
  switch (model.scheme) {
    case Weighting::kNone:
      return v;
    case Weighting::kIdf:
      return v.transformed([&](FeatureIndex f, double tf) { return tf * model.idf[f]; });
    case Weighting::kBm25: {
      const double k = model.bm25_k;
      const double b = model.bm25_b;
      const double rel_len = model.mean_doc_len > 0.0 ? v.sum() / model.mean_doc_len : 1.0;
      const double norm = k * (1.0 - b + b * rel_len);
      return v.transformed([&](FeatureIndex f, double tf) {
        return model.idf[f] * (tf * (k + 1.0)) / (tf + norm);
      });
    }
  }
  return v;
}

namespace {

struct VariantInfo {
  Vectorization variant;
  std::string_view name;
  bool terms;
  bool concepts;
  Weighting weighting;
};

constexpr std::array<VariantInfo, 6> kVariants = {{
    {Vectorization::kTfIdf, "tf-idf", true, false, Weighting::kIdf},
    {Vectorization::kBm25, "bm25", true, false, Weighting::kBm25},
    {Vectorization::kCfIdf, "cf-idf", false, true, Weighting::kIdf},
    {Vectorization::kBm25C, "bm25c", false, true, Weighting::kBm25},
    {Vectorization::kCtfIdf, "ctf-idf", true, true, Weighting::kIdf},
    {Vectorization::kBm25Ct, "bm25ct", true, true, Weighting::kBm25},
}};

const VariantInfo& info(Vectorization v) {
  for (const auto& i : kVariants) {
    if (i.variant == v) return i;
  }
  throw Error("unknown vectorization");
}

}  // namespace

Vectorization parse_vectorization(std::string_view name) {
  for (const auto& i : kVariants) {
    if (i.name == name) return i.variant;
  }
  std::string valid;
  for (const auto& i : kVariants) {
    if (!valid.empty()) valid += ", ";
    valid += i.name;
  }
  throw ConfigError("unknown vectorization '" + std::string(name) + "' (valid: " + valid + ")");
}

std::string_view to_string(Vectorization v) { return info(v).name; }

const std::vector<Vectorization>& all_vectorizations() {
  static const std::vector<Vectorization> all = [] {
    std::vector<Vectorization> v;
    for (const auto& i : kVariants) v.push_back(i.variant);
    return v;
  }();
  return all;
}

bool uses_terms(Vectorization v) { return info(v).terms; }
bool uses_concepts(Vectorization v) { return info(v).concepts; }
Weighting weighting_of(Vectorization v) { return info(v).weighting; }

Vectorizer::Vectorizer(Vectorization variant, Vocabulary vocab, WeightingModel term_weighting,
                       std::shared_ptr<const ConceptMatcher> matcher,
                       WeightingModel concept_weighting)
    : variant_(variant),
      vocab_(std::move(vocab)),
      term_weighting_(std::move(term_weighting)),
      matcher_(std::move(matcher)),
      concept_weighting_(std::move(concept_weighting)) {
  if (uses_concepts(variant_) && !matcher_) {
    throw ConfigError(std::string(to_string(variant_)) + " requires a thesaurus");
  }
}

Vectorizer Vectorizer::fit(Vectorization variant, std::span<const TokenSequence> training,
                           std::shared_ptr<const ConceptMatcher> matcher) {
  if (training.empty()) throw Error("vectorizer: empty training set");
  const Weighting scheme = weighting_of(variant);
  Vocabulary vocab;
  WeightingModel term_model;
  if (uses_terms(variant)) {
    vocab = Vocabulary::fit(training);
    std::vector<SparseVector> counts;
    counts.reserve(training.size());
    for (const auto& doc : training) counts.push_back(count_terms(doc, vocab));
    term_model = fit_weighting(counts, scheme);
  }
  WeightingModel concept_model;
  if (uses_concepts(variant)) {
    if (!matcher) throw ConfigError(std::string(to_string(variant)) + " requires a thesaurus");
    std::vector<SparseVector> counts;
    counts.reserve(training.size());
    for (const auto& doc : training) counts.push_back(matcher->extract(doc));
    concept_model = fit_weighting(counts, scheme);
  }
  return Vectorizer(variant, std::move(vocab), std::move(term_model),
                    uses_concepts(variant) ? std::move(matcher) : nullptr,
                    std::move(concept_model));
}

std::size_t Vectorizer::dim() const {
  std::size_t d = 0;
  if (uses_terms(variant_)) d += vocab_.size();
  if (uses_concepts(variant_)) d += matcher_->n_concepts();
  return d;
}

FeatureRow Vectorizer::transform(const TokenSequence& tokens) const {
  const bool terms = uses_terms(variant_);
  const bool concepts = uses_concepts(variant_);
  SparseVector term_counts, concept_counts;
  if (terms) term_counts = count_terms(tokens, vocab_);
  if (concepts) concept_counts = matcher_->extract(tokens);

  auto weighted = [](const SparseVector& counts, const WeightingModel& m) {
    return l2_normalize(apply_weighting(counts, m));
  };
  FeatureRow row;
  if (terms && concepts) {
    row.features = concat(weighted(term_counts, term_weighting_),
                          weighted(concept_counts, concept_weighting_));
    row.counts = concat(term_counts, concept_counts);
  } else if (terms) {
    row.features = weighted(term_counts, term_weighting_);
    row.counts = std::move(term_counts);
  } else {
    row.features = weighted(concept_counts, concept_weighting_);
    row.counts = std::move(concept_counts);
  }
  return row;
}

void write_vector_dump(std::ostream& out, std::string_view id, const SparseVector& v) {
  nlohmann::json record;
  record["id"] = id;
  record["indices"] = std::vector<FeatureIndex>(v.indices().begin(), v.indices().end());
  record["weights"] = std::vector<double>(v.weights().begin(), v.weights().end());
  out << record.dump() << '\n';
}

}  // namespace semannot
