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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semannot/classifier.hpp"
#include "semannot/corpus.hpp"
#include "semannot/error.hpp"
#include "semannot/evaluate.hpp"
#include "semannot/features.hpp"
#include "semannot/synthetic.hpp"
#include "semannot/text.hpp"

namespace semannot::cli {
namespace {

struct DataOptions {
  std::string corpus;
  std::string thesaurus;
  std::string thesaurus_format = "auto";
  std::string lemmas;
  std::string field = "title";
};

struct PipelineOptions {
  std::string vec = "tf-idf";
  std::string clf = "knn";
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::optional<std::size_t> knn_k;
  std::optional<std::size_t> l2r_k;
  std::optional<std::size_t> mlp_hidden;
  std::optional<double> mlp_threshold;
  std::optional<std::string> mlp_activation;
  std::optional<std::size_t> mlp_batch;
  std::optional<std::size_t> epochs;
  std::optional<double> alpha;
  std::optional<double> nb_alpha;
};

void add_data_options(CLI::App* cmd, DataOptions& o, bool corpus_required = true) {
  auto* c = cmd->add_option("--corpus", o.corpus, "JSON-lines corpus");
  if (corpus_required) c->required();
  cmd->add_option("--thesaurus", o.thesaurus, "SKOS thesaurus (N-Triples) or TSV concept list");
  cmd->add_option("--thesaurus-format", o.thesaurus_format, "ntriples, tsv or auto (by extension)");
  cmd->add_option("--lemmas", o.lemmas, "TAB-separated surface/lemma table");
  cmd->add_option("--field", o.field, "title or fulltext");
}

void add_pipeline_options(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--vec", o.vec, "tf-idf, bm25, cf-idf, bm25c, ctf-idf or bm25ct");
  cmd->add_option("--clf", o.clf, "classifier name");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--knn-k", o.knn_k, "neighbours for knn")->check(CLI::PositiveNumber);
  cmd->add_option("--l2r-k", o.l2r_k, "neighbours for l2r candidates")->check(CLI::PositiveNumber);
  cmd->add_option("--mlp-hidden", o.mlp_hidden, "hidden units")->check(CLI::PositiveNumber);
  cmd->add_option("--mlp-threshold", o.mlp_threshold, "output threshold");
  cmd->add_option("--mlp-activation", o.mlp_activation, "relu or tanh");
  cmd->add_option("--mlp-batch", o.mlp_batch, "mini-batch size")->check(CLI::PositiveNumber);
  cmd->add_option("--epochs", o.epochs, "training epochs (linear and mlp)")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", o.alpha, "L2 strength for svm/lr")->check(CLI::PositiveNumber);
  cmd->add_option("--nb-alpha", o.nb_alpha, "Lidstone smoothing for naive bayes")->check(CLI::PositiveNumber);
}

ClassifierConfig classifier_config(const PipelineOptions& o, ClassifierKind kind) {
  ClassifierConfig c;
  c.kind = kind;
  if (o.knn_k) c.knn_k = *o.knn_k;
  if (o.l2r_k) c.l2r_k = *o.l2r_k;
  if (o.mlp_hidden) c.mlp.hidden = *o.mlp_hidden;
  if (o.mlp_threshold) c.mlp.threshold = *o.mlp_threshold;
  if (o.mlp_activation) c.mlp.activation = parse_activation(*o.mlp_activation);
  if (o.mlp_batch) c.mlp.batch_size = *o.mlp_batch;
  if (o.epochs) {
    c.linear.epochs = *o.epochs;
    c.mlp.epochs = *o.epochs;
  }
  if (o.alpha) c.linear.alpha = *o.alpha;
  if (o.nb_alpha) c.nb_alpha = *o.nb_alpha;
  c.linear.seed = o.seed;
  c.linear.jobs = o.jobs;
  c.mlp.seed = o.seed;
  return c;
}

ThesaurusFormat resolve_format(const DataOptions& o) {
  if (o.thesaurus_format != "auto") return parse_thesaurus_format(o.thesaurus_format);
  const auto ext = std::filesystem::path(o.thesaurus).extension().string();
  return ext == ".tsv" || ext == ".txt" ? ThesaurusFormat::kTsv : ThesaurusFormat::kNTriples;
}

struct LoadedData {
  std::optional<Thesaurus> thesaurus;
  LemmaTable lemmas;
  std::vector<Document> docs;
  TextField field = TextField::kTitle;

  const Thesaurus* thesaurus_ptr() const { return thesaurus ? &*thesaurus : nullptr; }
};

void report_warnings(const LoadWarnings& w, std::ostream& err) {
  if (w.missing_field > 0) err << "warning: skipped " << w.missing_field << " documents without the requested field\n";
  if (w.empty_labels > 0) err << "warning: skipped " << w.empty_labels << " documents without labels\n";
  if (w.unknown_labels > 0) err << "warning: dropped " << w.unknown_labels << " labels missing from the thesaurus\n";
  if (w.unresolved_documents > 0) {
    err << "warning: skipped " << w.unresolved_documents << " documents with no known label\n";
  }
}

LoadedData load_data(const DataOptions& o, bool require_labels, std::ostream& err) {
  LoadedData d;
  d.field = parse_text_field(o.field);
  const ThesaurusFormat format = o.thesaurus.empty() ? ThesaurusFormat::kNTriples : resolve_format(o);
  if (!o.lemmas.empty()) d.lemmas = LemmaTable::load(o.lemmas);
  if (!o.thesaurus.empty()) d.thesaurus = load_thesaurus(o.thesaurus, format);
  CorpusOptions options;
  options.field = d.field;
  options.require_labels = require_labels;
  options.thesaurus = d.thesaurus_ptr();
  auto loaded = load_corpus(o.corpus, options);
  report_warnings(loaded.warnings, err);
  d.docs = std::move(loaded.documents);
  if (d.docs.empty()) throw Error("corpus " + o.corpus + " contains no usable documents");
  return d;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

std::string format_f1(double f1) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", f1);
  return buf;
}

// ---- evaluate ----------------------------------------------------------------

struct EvaluateOptions {
  DataOptions data;
  PipelineOptions pipeline;
  std::size_t folds = 10;
  std::string out_json;
  std::string out_csv;
  std::string grid;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
  // Validate every enum before touching the data.
  const TextField field = parse_text_field(o.data.field);
  std::vector<Vectorization> vecs;
  std::vector<ClassifierKind> clfs;
  if (o.grid.empty()) {
    vecs = {parse_vectorization(o.pipeline.vec)};
    clfs = {parse_classifier(o.pipeline.clf)};
  } else if (o.grid == "vectorizations") {
    vecs = all_vectorizations();
    clfs = {parse_classifier(o.pipeline.clf)};
  } else if (o.grid == "classifiers") {
    vecs = {parse_vectorization(o.pipeline.vec)};
    clfs = all_classifiers();
  } else {
    throw ConfigError("unknown grid '" + o.grid + "' (valid: vectorizations, classifiers)");
  }
  for (const auto v : vecs) {
    if (uses_concepts(v) && o.data.thesaurus.empty()) {
      throw ConfigError(std::string(to_string(v)) + " requires --thesaurus");
    }
  }
  if (o.pipeline.mlp_activation) parse_activation(*o.pipeline.mlp_activation);
  if (o.folds < 2) throw ConfigError("--folds must be at least 2");

  const LoadedData data = load_data(o.data, true, err);

  std::ostringstream csv;
  write_csv_header(csv);
  nlohmann::json reports = nlohmann::json::array();
  for (const auto v : vecs) {
    for (const auto c : clfs) {
      PipelineConfig config;
      config.field = field;
      config.vectorization = v;
      config.classifier = classifier_config(o.pipeline, c);
      const EvalReport report = evaluate_run(config, data.docs, data.thesaurus_ptr(), data.lemmas,
                                             o.folds, o.pipeline.seed, o.pipeline.jobs);
      write_csv_row(csv, report);
      reports.push_back(report_to_json(report));
      if (vecs.size() * clfs.size() > 1) {
        out << to_string(v) << ' ' << to_string(c) << ' ' << format_f1(report.mean.f1) << '\n';
      } else {
        out << format_f1(report.mean.f1) << '\n';
      }
    }
  }
  if (!o.out_csv.empty()) write_file(o.out_csv, csv.str());
  if (!o.out_json.empty()) {
    const nlohmann::json doc = reports.size() == 1 ? reports[0] : nlohmann::json{{"runs", reports}};
    write_file(o.out_json, doc.dump(2) + "\n");
  }
  return 0;
}

// ---- train / annotate ----------------------------------------------------------

struct TrainOptions {
  DataOptions data;
  PipelineOptions pipeline;
  std::string model;
};

int cmd_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  const TextField field = parse_text_field(o.data.field);
  const Vectorization vec = parse_vectorization(o.pipeline.vec);
  const ClassifierKind kind = parse_classifier(o.pipeline.clf);
  if (uses_concepts(vec) && o.data.thesaurus.empty()) {
    throw ConfigError(std::string(to_string(vec)) + " requires --thesaurus");
  }
  const ClassifierConfig config = classifier_config(o.pipeline, kind);
  const LoadedData data = load_data(o.data, true, err);
  const Annotator annotator =
      Annotator::train(data.docs, field, vec, config, data.thesaurus_ptr(), data.lemmas);
  annotator.save(o.model);
  out << "trained " << to_string(kind) << " on " << data.docs.size() << " documents ("
      << annotator.vectorizer().dim() << " features, " << annotator.labels().size() << " labels)\n";
  return 0;
}

struct AnnotateOptions {
  std::string model;
  std::string corpus;
  std::string out;
};

int cmd_annotate(const AnnotateOptions& o, std::ostream& out, std::ostream& err) {
  const Annotator annotator = Annotator::load(o.model);
  CorpusOptions options;
  options.field = annotator.field();
  options.require_labels = false;
  auto loaded = load_corpus(o.corpus, options);
  report_warnings(loaded.warnings, err);
  std::ostringstream lines;
  for (const auto& doc : loaded.documents) {
    const nlohmann::json row = {{"id", doc.id}, {"labels", annotator.annotate(doc)}};
    lines << row.dump() << '\n';
  }
  if (o.out.empty()) {
    out << lines.str();
  } else {
    write_file(o.out, lines.str());
  }
  return 0;
}

// ---- stats -------------------------------------------------------------------

int cmd_stats(const DataOptions& o, std::ostream& out, std::ostream& err) {
  if (o.thesaurus.empty()) throw ConfigError("stats requires --thesaurus");
  const LoadedData data = load_data(o, true, err);
  const Preprocessor preprocess(data.lemmas);
  const ConceptMatcher matcher = ConceptMatcher::build(*data.thesaurus, preprocess);

  std::vector<std::size_t> tokens_per_doc;
  std::vector<std::size_t> concepts_per_doc;
  std::set<std::string> vocab_title;
  std::set<std::string> vocab_fulltext;
  bool any_fulltext = false;
  for (const auto& doc : data.docs) {
    const auto title = preprocess(doc.title);
    vocab_title.insert(title.begin(), title.end());
    if (doc.fulltext) {
      any_fulltext = true;
      const auto full = preprocess(*doc.fulltext);
      vocab_fulltext.insert(full.begin(), full.end());
    }
    const auto tokens = data.field == TextField::kTitle ? title : preprocess(doc.text(data.field));
    tokens_per_doc.push_back(tokens.size());
    concepts_per_doc.push_back(static_cast<std::size_t>(matcher.extract(tokens).sum()));
  }
  CorpusStats s = corpus_stats(data.docs, *data.thesaurus, tokens_per_doc, concepts_per_doc);
  s.vocabulary_size_title = vocab_title.size();
  s.vocabulary_size_fulltext = vocab_fulltext.size();

  auto row = [&](const char* name, const std::string& value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-36s", name);
    out << buf << value << '\n';
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  auto pm = [&](double m, double sd) { return num(m) + " (SD " + num(sd) + ")"; };
  row("Documents", std::to_string(s.n_docs));
  row("Concepts in thesaurus", std::to_string(s.n_concepts_in_thesaurus));
  row("Labels used", std::to_string(s.n_labels_used));
  row("Documents per label", pm(s.mean_docs_per_label, s.sd_docs_per_label));
  row("Labels per document", pm(s.mean_labels_per_doc, s.sd_labels_per_doc));
  row("Labels per document (median)", num(s.median_labels_per_doc));
  row("Vocabulary (titles)", std::to_string(s.vocabulary_size_title));
  row("Vocabulary (full text)", any_fulltext ? std::to_string(s.vocabulary_size_fulltext) : "n/a");
  row(data.field == TextField::kTitle ? "Words per title" : "Words per full text",
      pm(s.mean_words_per_doc, s.sd_words_per_doc));
  row(data.field == TextField::kTitle ? "Concepts per title" : "Concepts per full text",
      pm(s.mean_concepts_per_doc, s.sd_concepts_per_doc));
  return 0;
}

// ---- generate ------------------------------------------------------------------

struct GenerateOptions {
  SyntheticConfig config;
  std::string out_corpus;
  std::string out_thesaurus;
};

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  const SyntheticCorpus corpus = generate_synthetic(o.config);
  std::ostringstream docs;
  write_corpus(docs, corpus.documents);
  write_file(o.out_corpus, docs.str());
  std::ostringstream thesaurus;
  write_thesaurus_tsv(thesaurus, corpus.thesaurus);
  write_file(o.out_thesaurus, thesaurus.str());
  out << "wrote " << corpus.documents.size() << " documents and " << corpus.thesaurus.size()
      << " concepts\n";
  return 0;
}

// ---- vectorize -----------------------------------------------------------------

struct VectorizeOptions {
  DataOptions data;
  std::string vec = "tf-idf";
  std::string out;
};

int cmd_vectorize(const VectorizeOptions& o, std::ostream& out, std::ostream& err) {
  const Vectorization vec = parse_vectorization(o.vec);
  if (uses_concepts(vec) && o.data.thesaurus.empty()) {
    throw ConfigError(std::string(to_string(vec)) + " requires --thesaurus");
  }
  const LoadedData data = load_data(o.data, false, err);
  const Preprocessor preprocess(data.lemmas);
  std::shared_ptr<const ConceptMatcher> matcher;
  if (uses_concepts(vec)) {
    matcher = std::make_shared<const ConceptMatcher>(ConceptMatcher::build(*data.thesaurus, preprocess));
  }
  std::vector<TokenSequence> tokens;
  for (const auto& doc : data.docs) tokens.push_back(preprocess(doc.text(data.field)));
  const Vectorizer vectorizer = Vectorizer::fit(vec, tokens, matcher);
  std::ostringstream dump;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    write_vector_dump(dump, data.docs[i].id, vectorizer.transform(tokens[i]).features);
  }
  if (o.out.empty()) {
    out << dump.str();
  } else {
    write_file(o.out, dump.str());
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-label subject annotation of documents from titles or full text"};
  app.require_subcommand(1);

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "cross-validate one configuration or a grid");
  add_data_options(evaluate, eval.data);
  add_pipeline_options(evaluate, eval.pipeline);
  evaluate->add_option("--folds", eval.folds, "number of folds");
  evaluate->add_option("--out-json", eval.out_json, "report JSON path");
  evaluate->add_option("--out-csv", eval.out_csv, "report CSV path");
  evaluate->add_option("--grid", eval.grid, "vectorizations or classifiers");

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "fit a model on a whole corpus");
  add_data_options(train_cmd, train.data);
  add_pipeline_options(train_cmd, train.pipeline);
  train_cmd->add_option("--model", train.model, "output model path")->required();

  AnnotateOptions annotate;
  auto* annotate_cmd = app.add_subcommand("annotate", "predict labels with a trained model");
  annotate_cmd->add_option("--model", annotate.model, "model path")->required();
  annotate_cmd->add_option("--corpus", annotate.corpus, "JSON-lines documents")->required();
  annotate_cmd->add_option("--out", annotate.out, "output path (default: stdout)");

  DataOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "corpus statistics");
  add_data_options(stats_cmd, stats);

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "write a seeded synthetic corpus and thesaurus");
  gen_cmd->add_option("--out-corpus", gen.out_corpus, "corpus output path")->required();
  gen_cmd->add_option("--out-thesaurus", gen.out_thesaurus, "thesaurus TSV output path")->required();
  gen_cmd->add_option("--docs", gen.config.n_docs, "documents");
  gen_cmd->add_option("--labels", gen.config.n_labels, "labels");
  gen_cmd->add_option("--keywords", gen.config.keywords_per_label, "keyword slots per label");
  gen_cmd->add_option("--synonyms", gen.config.synonyms_per_slot, "synonyms per keyword slot");
  gen_cmd->add_option("--synonym-rate", gen.config.synonym_rate, "probability of a synonym mention");
  gen_cmd->add_option("--overlap", gen.config.overlap, "probability of a foreign keyword mention");
  gen_cmd->add_option("--min-labels", gen.config.min_labels, "minimum labels per document");
  gen_cmd->add_option("--max-labels", gen.config.max_labels, "maximum labels per document");
  gen_cmd->add_option("--mentions", gen.config.mentions_per_label, "title mentions per label");
  gen_cmd->add_option("--filler", gen.config.filler_words, "filler words per title");
  gen_cmd->add_option("--fulltext-mentions", gen.config.fulltext_mentions,
                      "full-text mentions per label (0: no full text)");
  gen_cmd->add_option("--seed", gen.config.seed, "random seed");

  VectorizeOptions vectorize;
  auto* vec_cmd = app.add_subcommand("vectorize", "dump feature vectors fitted on the corpus");
  add_data_options(vec_cmd, vectorize.data);
  vec_cmd->add_option("--vec", vectorize.vec, "vectorization variant");
  vec_cmd->add_option("--out", vectorize.out, "output path (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*evaluate) return cmd_evaluate(eval, out, err);
    if (*train_cmd) return cmd_train(train, out, err);
    if (*annotate_cmd) return cmd_annotate(annotate, out, err);
    if (*stats_cmd) return cmd_stats(stats, out, err);
    if (*gen_cmd) return cmd_generate(gen, out);
    if (*vec_cmd) return cmd_vectorize(vectorize, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace semannot::cli
