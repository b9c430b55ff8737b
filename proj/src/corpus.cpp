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

#include "semannot/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "semannot/error.hpp"

namespace semannot {
namespace {

using json = nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Collects pref/alt labels per subject, preserving first-seen subject order.
class ConceptCollector {
 public:
  void add_pref(const std::string& id, std::string label, std::size_t line) {
    Entry& e = entry(id);
    if (e.pref) {
      throw ParseError("concept " + id + " has more than one preferred label", line);
    }
    e.pref = std::move(label);
  }

  void add_alt(const std::string& id, std::string label) {
    entry(id).alts.push_back(std::move(label));
  }

  Thesaurus build() {
    if (order_.empty()) throw Error("no concepts");
    std::vector<Concept> concepts;
    concepts.reserve(order_.size());
    for (const auto& id : order_) {
      Entry& e = entries_[id];
      if (!e.pref || trim(*e.pref).empty()) {
        throw Error("concept " + id + " has no preferred label");
      }
      Concept c{id, *e.pref, {}};
      std::unordered_set<std::string> seen{c.pref_label};
      for (auto& alt : e.alts) {
        if (trim(alt).empty()) continue;
        if (seen.insert(alt).second) c.alt_labels.push_back(std::move(alt));
      }
      concepts.push_back(std::move(c));
    }
    return Thesaurus(std::move(concepts));
  }

 private:
  struct Entry {
    std::optional<std::string> pref;
    std::vector<std::string> alts;
  };

  Entry& entry(const std::string& id) {
    auto [it, inserted] = entries_.try_emplace(id);
    if (inserted) order_.push_back(id);
    return it->second;
  }

  std::vector<std::string> order_;
  std::unordered_map<std::string, Entry> entries_;
};

// Minimal N-Triples term reader: IRIs, blank nodes, bare tokens, and literals
// with optional language tag or datatype.
class TripleScanner {
 public:
  TripleScanner(std::string_view line, std::size_t line_no) : s_(line), line_(line_no) {}

  std::string resource() {
    skip_space();
    if (pos_ >= s_.size()) throw ParseError("truncated triple", line_);
    if (s_[pos_] == '<') {
      const auto end = s_.find('>', pos_);
      if (end == std::string_view::npos) throw ParseError("unterminated IRI", line_);
      std::string iri(s_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return iri;
    }
    const auto start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  // Object position; returns nullopt when the object is not a literal.
  std::optional<std::string> literal() {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != '"') return std::nullopt;
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) throw ParseError("unterminated literal", line_);
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= s_.size()) throw ParseError("dangling escape", line_);
      const char e = s_[pos_++];
      switch (e) {
        case 't': out.push_back('\t'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'u':
        case 'U': append_codepoint(out, e == 'u' ? 4 : 8); break;
        default: throw ParseError("unknown escape in literal", line_);
      }
    }
    // Language tag or datatype is dropped.
    if (pos_ < s_.size() && s_[pos_] == '@') {
      while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      resource();
    }
    return out;
  }

 private:
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void append_codepoint(std::string& out, std::size_t digits) {
    if (pos_ + digits > s_.size()) throw ParseError("truncated unicode escape", line_);
    const std::string hex(s_.substr(pos_, digits));
    pos_ += digits;
    std::uint32_t cp = 0;
    try {
      cp = static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16));
    } catch (const std::exception&) {
      throw ParseError("bad unicode escape", line_);
    }
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Thesaurus read_ntriples(std::istream& in) {
  ConceptCollector collector;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    TripleScanner scan(body, line_no);
    const std::string subject = scan.resource();
    const std::string predicate = scan.resource();
    const bool pref = ends_with(predicate, "prefLabel");
    const bool alt = ends_with(predicate, "altLabel");
    if (!pref && !alt) continue;
    auto object = scan.literal();
    if (!object) continue;
    if (pref) {
      collector.add_pref(subject, std::move(*object), line_no);
    } else {
      collector.add_alt(subject, std::move(*object));
    }
  }
  return collector.build();
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto end = s.find(sep, start);
    parts.emplace_back(s.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

Thesaurus read_tsv(std::istream& in) {
  ConceptCollector collector;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line) || line.front() == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() < 2 || cols.size() > 3) {
      throw ParseError("expected 2 or 3 tab-separated columns", line_no);
    }
    const std::string id(trim(cols[0]));
    if (id.empty()) throw ParseError("empty concept id", line_no);
    if (!ids.insert(id).second) throw ParseError("duplicate concept id " + id, line_no);
    collector.add_pref(id, std::string(trim(cols[1])), line_no);
    if (cols.size() == 3 && !cols[2].empty()) {
      for (auto& alt : split(cols[2], '|')) collector.add_alt(id, std::string(trim(alt)));
    }
  }
  return collector.build();
}

}  // namespace

TextField parse_text_field(std::string_view name) {
  if (name == "title") return TextField::kTitle;
  if (name == "fulltext") return TextField::kFulltext;
  throw ConfigError("unknown input field '" + std::string(name) +
                    "' (valid: title, fulltext)");
}

std::string_view to_string(TextField field) {
  return field == TextField::kTitle ? "title" : "fulltext";
}

const std::string& Document::text(TextField field) const {
  static const std::string kEmpty;
  if (field == TextField::kTitle) return title;
  return fulltext ? *fulltext : kEmpty;
}

Thesaurus::Thesaurus(std::vector<Concept> concepts) : concepts_(std::move(concepts)) {
  for (std::size_t i = 0; i < concepts_.size(); ++i) {
    if (!by_id_.emplace(concepts_[i].id, i).second) {
      throw Error("duplicate concept id " + concepts_[i].id);
    }
  }
}

bool Thesaurus::contains(std::string_view id) const {
  return by_id_.count(std::string(id)) > 0;
}

std::optional<std::size_t> Thesaurus::ordinal(std::string_view id) const {
  const auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

ThesaurusFormat parse_thesaurus_format(std::string_view name) {
  if (name == "ntriples" || name == "nt") return ThesaurusFormat::kNTriples;
  if (name == "tsv") return ThesaurusFormat::kTsv;
  throw ConfigError("unknown thesaurus format '" + std::string(name) +
                    "' (valid: ntriples, tsv)");
}

LoadedCorpus read_corpus(std::istream& in, const CorpusOptions& options) {
  LoadedCorpus result;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    Document doc;
    std::vector<std::string> labels;
    try {
      const json record = json::parse(line);
      if (!record.is_object()) throw ParseError("expected a JSON object", line_no);
      doc.id = record.at("id").get<std::string>();
      if (record.contains("title") && !record["title"].is_null()) {
        doc.title = record["title"].get<std::string>();
      } else if (options.field == TextField::kTitle) {
        ++result.warnings.missing_field;
        if (!ids.insert(doc.id).second) throw ParseError("duplicate id " + doc.id, line_no);
        continue;
      }
      if (record.contains("fulltext") && !record["fulltext"].is_null()) {
        doc.fulltext = record["fulltext"].get<std::string>();
      }
      if (record.contains("labels")) labels = record["labels"].get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed record: ") + e.what(), line_no);
    }
    if (!ids.insert(doc.id).second) throw ParseError("duplicate id " + doc.id, line_no);
    if (options.field == TextField::kFulltext && !doc.fulltext) {
      ++result.warnings.missing_field;
      continue;
    }
    sort_unique(labels);
    if (options.thesaurus != nullptr) {
      const auto before = labels.size();
      std::erase_if(labels, [&](const std::string& l) { return !options.thesaurus->contains(l); });
      result.warnings.unknown_labels += before - labels.size();
      if (before > 0 && labels.empty()) {
        ++result.warnings.unresolved_documents;
        if (options.require_labels) continue;
      }
    }
    if (labels.empty() && options.require_labels) {
      ++result.warnings.empty_labels;
      continue;
    }
    doc.gold_labels = std::move(labels);
    result.documents.push_back(std::move(doc));
  }
  return result;
}

LoadedCorpus load_corpus(const std::filesystem::path& path, const CorpusOptions& options) {
  auto in = open_input(path);
  return read_corpus(in, options);
}

void write_corpus(std::ostream& out, const std::vector<Document>& documents) {
  for (const auto& doc : documents) {
    json record = {{"id", doc.id}, {"title", doc.title}};
    if (doc.fulltext) record["fulltext"] = *doc.fulltext;
    record["labels"] = doc.gold_labels;
    out << record.dump() << '\n';
  }
}

Thesaurus read_thesaurus(std::istream& in, ThesaurusFormat format) {
  return format == ThesaurusFormat::kNTriples ? read_ntriples(in) : read_tsv(in);
}

Thesaurus load_thesaurus(const std::filesystem::path& path, ThesaurusFormat format) {
  auto in = open_input(path);
  return read_thesaurus(in, format);
}

void write_thesaurus_tsv(std::ostream& out, const Thesaurus& thesaurus) {
  for (const auto& c : thesaurus.concepts()) {
    out << c.id << '\t' << c.pref_label << '\t';
    for (std::size_t i = 0; i < c.alt_labels.size(); ++i) {
      if (i > 0) out << '|';
      out << c.alt_labels[i];
    }
    out << '\n';
  }
}

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

template <typename T>
MeanSd population_mean_sd(const std::vector<T>& values) {
  MeanSd r;
  if (values.empty()) return r;
  const double n = static_cast<double>(values.size());
  for (const auto v : values) r.mean += static_cast<double>(v);
  r.mean /= n;
  double ss = 0.0;
  for (const auto v : values) {
    const double d = static_cast<double>(v) - r.mean;
    ss += d * d;
  }
  r.sd = std::sqrt(ss / n);
  return r;
}

}  // namespace

CorpusStats corpus_stats(const std::vector<Document>& docs, const Thesaurus& thesaurus,
                         const std::vector<std::size_t>& tokens_per_doc,
                         const std::vector<std::size_t>& concepts_per_doc) {
  if (docs.empty()) throw Error("corpus_stats: empty corpus");
  if (tokens_per_doc.size() != docs.size() || concepts_per_doc.size() != docs.size()) {
    throw Error("corpus_stats: count lists must align with documents");
  }
  CorpusStats s;
  s.n_docs = docs.size();
  s.n_concepts_in_thesaurus = thesaurus.size();

  std::map<std::string, std::size_t> docs_per_label;
  std::vector<std::size_t> labels_per_doc;
  labels_per_doc.reserve(docs.size());
  for (const auto& d : docs) {
    labels_per_doc.push_back(d.gold_labels.size());
    for (const auto& l : d.gold_labels) ++docs_per_label[l];
  }
  s.n_labels_used = docs_per_label.size();

  std::vector<std::size_t> label_counts;
  for (const auto& [label, count] : docs_per_label) label_counts.push_back(count);
  const auto dl = population_mean_sd(label_counts);
  s.mean_docs_per_label = dl.mean;
  s.sd_docs_per_label = dl.sd;

  const auto ld = population_mean_sd(labels_per_doc);
  s.mean_labels_per_doc = ld.mean;
  s.sd_labels_per_doc = ld.sd;
  auto sorted = labels_per_doc;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median_labels_per_doc = sorted.size() % 2 == 1
                                ? static_cast<double>(sorted[mid])
                                : (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;

  const auto wd = population_mean_sd(tokens_per_doc);
  s.mean_words_per_doc = wd.mean;
  s.sd_words_per_doc = wd.sd;
  const auto cd = population_mean_sd(concepts_per_doc);
  s.mean_concepts_per_doc = cd.mean;
  s.sd_concepts_per_doc = cd.sd;
  return s;
}

}  // namespace semannot
