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

#include "semannot/synthetic.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>

#include "semannot/error.hpp"

namespace semannot {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";

// Consonant-vowel syllables: words never end in 's', so suffix rules leave them alone.
class WordSource {
 public:
  explicit WordSource(std::mt19937_64& rng) : rng_(rng) {}

  std::string next() {
    std::uniform_int_distribution<std::size_t> syllables(2, 4);
    std::uniform_int_distribution<std::size_t> c(0, kConsonants.size() - 1);
    std::uniform_int_distribution<std::size_t> v(0, kVowels.size() - 1);
    while (true) {
      std::string w;
      const std::size_t n = syllables(rng_);
      for (std::size_t i = 0; i < n; ++i) {
        w += kConsonants[c(rng_)];
        w += kVowels[v(rng_)];
      }
      if (used_.insert(w).second) return w;
    }
  }

 private:
  std::mt19937_64& rng_;
  std::unordered_set<std::string> used_;
};

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  if (!out.empty()) out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticConfig& config) {
  if (config.n_labels == 0 || config.keywords_per_label == 0) {
    throw ConfigError("synthetic corpus needs at least one label and keyword");
  }
  if (config.min_labels == 0 || config.min_labels > config.max_labels ||
      config.max_labels > config.n_labels) {
    throw ConfigError("synthetic corpus label count range is invalid");
  }
  if (config.mentions_per_label == 0) throw ConfigError("mentions_per_label must be positive");

  std::mt19937_64 rng(config.seed);
  WordSource words(rng);

  // forms[label][slot][0] is canonical; the rest are synonyms.
  std::vector<std::vector<std::vector<std::string>>> forms(config.n_labels);
  std::vector<Concept> concepts;
  for (std::size_t l = 0; l < config.n_labels; ++l) {
    Concept c;
    c.id = "c" + std::to_string(l);
    forms[l].resize(config.keywords_per_label);
    for (auto& slot : forms[l]) {
      for (std::size_t s = 0; s <= config.synonyms_per_slot; ++s) slot.push_back(words.next());
    }
    c.pref_label = forms[l][0][0];
    for (const auto& slot : forms[l]) {
      for (const auto& f : slot) {
        if (f != c.pref_label) c.alt_labels.push_back(f);
      }
    }
    concepts.push_back(std::move(c));
  }
  std::vector<std::string> filler(config.filler_vocabulary);
  for (auto& w : filler) w = words.next();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> n_labels_dist(config.min_labels, config.max_labels);
  std::uniform_int_distribution<std::size_t> slot_dist(0, config.keywords_per_label - 1);
  std::uniform_int_distribution<std::size_t> syn_dist(1, std::max<std::size_t>(1, config.synonyms_per_slot));
  std::uniform_int_distribution<std::size_t> label_dist(0, config.n_labels - 1);

  auto mention = [&](std::size_t label) {
    if (config.overlap > 0.0 && config.n_labels > 1 && unit(rng) < config.overlap) {
      std::size_t other = label_dist(rng);
      while (other == label) other = label_dist(rng);
      label = other;
    }
    const auto& slot = forms[label][slot_dist(rng)];
    if (config.synonyms_per_slot > 0 && unit(rng) < config.synonym_rate) return slot[syn_dist(rng)];
    return slot[0];
  };
  auto filler_word = [&] {
    std::uniform_int_distribution<std::size_t> d(0, filler.size() - 1);
    return filler[d(rng)];
  };

  std::vector<std::size_t> all_labels(config.n_labels);
  for (std::size_t l = 0; l < config.n_labels; ++l) all_labels[l] = l;

  SyntheticCorpus out;
  out.documents.reserve(config.n_docs);
  for (std::size_t d = 0; d < config.n_docs; ++d) {
    std::shuffle(all_labels.begin(), all_labels.end(), rng);
    std::vector<std::size_t> labels(all_labels.begin(), all_labels.begin() + static_cast<std::ptrdiff_t>(n_labels_dist(rng)));
    std::sort(labels.begin(), labels.end());

    std::vector<std::string> title;
    for (const auto l : labels) {
      for (std::size_t m = 0; m < config.mentions_per_label; ++m) title.push_back(mention(l));
    }
    if (!filler.empty()) {
      for (std::size_t i = 0; i < config.filler_words; ++i) title.push_back(filler_word());
    }
    std::shuffle(title.begin(), title.end(), rng);

    Document doc;
    doc.id = "d" + std::to_string(d);
    doc.title = join(title);
    if (config.fulltext_mentions > 0) {
      std::vector<std::string> body;
      for (const auto l : labels) {
        for (std::size_t m = 0; m < config.fulltext_mentions; ++m) body.push_back(mention(l));
      }
      if (!filler.empty()) {
        for (std::size_t i = 0; i < 5 * config.filler_words; ++i) body.push_back(filler_word());
      }
      std::shuffle(body.begin(), body.end(), rng);
      doc.fulltext = doc.title + ". " + join(body) + ".";
    }
    for (const auto l : labels) doc.gold_labels.push_back(concepts[l].id);
    std::sort(doc.gold_labels.begin(), doc.gold_labels.end());
    out.documents.push_back(std::move(doc));
  }
  out.thesaurus = Thesaurus(std::move(concepts));
  return out;
}

}  // namespace semannot
