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

#ifndef SEMANNOT_CORPUS_HPP_
#define SEMANNOT_CORPUS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semannot {

using ConceptId = std::string;

enum class TextField { kTitle, kFulltext };

TextField parse_text_field(std::string_view name);
std::string_view to_string(TextField field);

struct Document {
  std::string id;
  std::string title;
  std::optional<std::string> fulltext;
  // Sorted, without duplicates.
  std::vector<ConceptId> gold_labels;

  // The raw text of the requested field ("" when the field is absent).
  const std::string& text(TextField field) const;
};

struct Concept {
  ConceptId id;
  std::string pref_label;
  std::vector<std::string> alt_labels;

  friend bool operator==(const Concept&, const Concept&) = default;
};

// Controlled vocabulary. Concepts keep their load order, which fixes the
// concept feature indices used downstream.
class Thesaurus {
 public:
  Thesaurus() = default;
  explicit Thesaurus(std::vector<Concept> concepts);

  std::size_t size() const { return concepts_.size(); }
  const std::vector<Concept>& concepts() const { return concepts_; }
  const Concept& concept_at(std::size_t ordinal) const { return concepts_[ordinal]; }

  bool contains(std::string_view id) const;
  // Ordinal of a concept id, or nullopt.
  std::optional<std::size_t> ordinal(std::string_view id) const;

  friend bool operator==(const Thesaurus& a, const Thesaurus& b) {
    return a.concepts_ == b.concepts_;
  }

 private:
  std::vector<Concept> concepts_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

enum class ThesaurusFormat { kNTriples, kTsv };

ThesaurusFormat parse_thesaurus_format(std::string_view name);

struct CorpusOptions {
  TextField field = TextField::kTitle;
  // When false (annotation input), documents without labels are kept.
  bool require_labels = true;
  // When set, labels missing from the thesaurus are dropped.
  const Thesaurus* thesaurus = nullptr;
};

// Counters for everything the loader silently skipped.
struct LoadWarnings {
  std::size_t missing_field = 0;
  std::size_t empty_labels = 0;
  std::size_t unknown_labels = 0;        // individual label references dropped
  std::size_t unresolved_documents = 0;  // documents left with no known label
};

struct LoadedCorpus {
  std::vector<Document> documents;
  LoadWarnings warnings;
};

LoadedCorpus read_corpus(std::istream& in, const CorpusOptions& options);
LoadedCorpus load_corpus(const std::filesystem::path& path, const CorpusOptions& options);

void write_corpus(std::ostream& out, const std::vector<Document>& documents);

Thesaurus read_thesaurus(std::istream& in, ThesaurusFormat format);
Thesaurus load_thesaurus(const std::filesystem::path& path, ThesaurusFormat format);
void write_thesaurus_tsv(std::ostream& out, const Thesaurus& thesaurus);

// Dataset statistics in the layout of the usual corpus-overview table. SDs are
// population standard deviations.
struct CorpusStats {
  std::size_t n_docs = 0;
  std::size_t n_concepts_in_thesaurus = 0;
  std::size_t n_labels_used = 0;
  double mean_docs_per_label = 0.0;
  double sd_docs_per_label = 0.0;
  double mean_labels_per_doc = 0.0;
  double sd_labels_per_doc = 0.0;
  double median_labels_per_doc = 0.0;
  std::size_t vocabulary_size_title = 0;
  std::size_t vocabulary_size_fulltext = 0;
  double mean_words_per_doc = 0.0;
  double sd_words_per_doc = 0.0;
  double mean_concepts_per_doc = 0.0;
  double sd_concepts_per_doc = 0.0;
};

// Vocabulary sizes are left at zero; callers that tokenized both fields fill them in.
CorpusStats corpus_stats(const std::vector<Document>& docs, const Thesaurus& thesaurus,
                         const std::vector<std::size_t>& tokens_per_doc,
                         const std::vector<std::size_t>& concepts_per_doc);

}  // namespace semannot

#endif  // SEMANNOT_CORPUS_HPP_
