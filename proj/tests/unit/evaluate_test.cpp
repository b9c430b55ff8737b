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

#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "semannot/error.hpp"
#include "semannot/evaluate.hpp"
#include "semannot/synthetic.hpp"

namespace semannot {
namespace {

using Ids = std::vector<ConceptId>;

TEST(FoldTest, OneDocumentPerFold) {
  const auto plan = make_folds(10, 10, 3);
  for (const auto& f : plan.folds) {
    EXPECT_EQ(f.test.size(), 1u);
    EXPECT_EQ(f.train.size(), 9u);
  }
}

TEST(FoldTest, RemainderGoesToFirstFolds) {
  const auto plan = make_folds(12, 10, 3);
  for (std::size_t f = 0; f < 10; ++f) EXPECT_EQ(plan.folds[f].test.size(), f < 2 ? 2u : 1u);
}

TEST(FoldTest, PartitionProperty) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 12;
    const std::size_t n = k + rng() % 200;
    const auto plan = make_folds(n, k, rng());
    std::vector<int> seen(n, 0);
    std::size_t lo = n;
    std::size_t hi = 0;
    for (const auto& f : plan.folds) {
      lo = std::min(lo, f.test.size());
      hi = std::max(hi, f.test.size());
      EXPECT_EQ(f.train.size() + f.test.size(), n);
      for (const auto d : f.test) ++seen[d];
      std::set<std::size_t> train(f.train.begin(), f.train.end());
      for (const auto d : f.test) EXPECT_FALSE(train.count(d));
    }
    for (const int s : seen) EXPECT_EQ(s, 1);
    EXPECT_LE(hi - lo, 1u);
  }
}

TEST(FoldTest, SeedControlsShuffle) {
  EXPECT_EQ(make_folds(50, 5, 1).permutation, make_folds(50, 5, 1).permutation);
  EXPECT_NE(make_folds(50, 5, 1).permutation, make_folds(50, 5, 2).permutation);
}

TEST(FoldTest, TooFewDocumentsIsAnError) { EXPECT_THROW(make_folds(9, 10, 0), Error); }

TEST(SamplePrfTest, HandCases) {
  const auto same = sample_prf(Ids{"a", "b"}, Ids{"a", "b"});
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);
  const auto empty = sample_prf(Ids{}, Ids{"a"});
  EXPECT_EQ(empty.precision, 0.0);
  EXPECT_EQ(empty.recall, 0.0);
  EXPECT_EQ(empty.f1, 0.0);
  const auto half = sample_prf(Ids{"a", "b"}, Ids{"b", "c"});
  EXPECT_EQ(half.precision, 0.5);
  EXPECT_EQ(half.recall, 0.5);
  EXPECT_EQ(half.f1, 0.5);
}

TEST(SamplePrfTest, Symmetry) {
  std::mt19937_64 rng(4);
  const Ids pool{"a", "b", "c", "d", "e", "f"};
  for (int t = 0; t < 500; ++t) {
    Ids a;
    Ids b;
    for (const auto& id : pool) {
      if (rng() % 2) a.push_back(id);
      if (rng() % 2) b.push_back(id);
    }
    if (a.empty() || b.empty()) continue;
    const auto ab = sample_prf(a, b);
    const auto ba = sample_prf(b, a);
    EXPECT_EQ(ab.recall, ba.precision);
    EXPECT_EQ(ab.f1, ba.f1);
    EXPECT_GE(ab.f1, 0.0);
    EXPECT_LE(ab.f1, 1.0);
  }
}

std::vector<Document> small_corpus(std::size_t n = 60, std::uint64_t seed = 3) {
  return generate_synthetic({.n_docs = n, .n_labels = 6, .seed = seed}).documents;
}

TEST(EvaluateFoldsTest, GoldEchoScoresOne) {
  const auto docs = small_corpus();
  const auto plan = make_folds(docs.size(), 10, 1);
  const auto report = evaluate_folds(docs, plan, [&](const Fold& f, std::size_t) {
    std::vector<DocOutcome> out;
    for (const auto d : f.test) out.push_back({docs[d].gold_labels, false});
    return out;
  });
  EXPECT_EQ(report.mean.f1, 1.0);
  EXPECT_EQ(report.mean.precision, 1.0);
  EXPECT_EQ(report.empty_predictions, 0u);
}

TEST(EvaluateFoldsTest, EmptyPredictionsScoreZero) {
  const auto docs = small_corpus(23);
  const auto plan = make_folds(docs.size(), 10, 1);
  const auto report = evaluate_folds(docs, plan, [&](const Fold& f, std::size_t) {
    return std::vector<DocOutcome>(f.test.size());
  });
  EXPECT_EQ(report.mean.f1, 0.0);
  EXPECT_EQ(report.empty_predictions, docs.size());
}

TEST(EvaluateFoldsTest, OverallMeanIsUnweightedMeanOfFolds) {
  const auto docs = small_corpus(23);
  const auto plan = make_folds(docs.size(), 10, 5);
  std::mt19937_64 rng(2);
  std::vector<std::vector<DocOutcome>> canned(10);
  for (std::size_t f = 0; f < 10; ++f) {
    for (const auto d : plan.folds[f].test) {
      canned[f].push_back({rng() % 2 ? docs[d].gold_labels : Ids{"c0"}, false});
    }
  }
  const auto report = evaluate_folds(docs, plan, [&](const Fold&, std::size_t f) { return canned[f]; });
  double sum = 0.0;
  for (const auto& f : report.folds) sum += f.mean.f1;
  EXPECT_NEAR(report.mean.f1, sum / 10.0, 1e-15);
  for (const auto& f : report.folds) {
    double fold_sum = 0.0;
    for (std::size_t i = 0; i < plan.folds[f.fold].test.size(); ++i) {
      fold_sum += sample_prf(canned[f.fold][i].labels, docs[plan.folds[f.fold].test[i]].gold_labels).f1;
    }
    EXPECT_NEAR(f.mean.f1, fold_sum / static_cast<double>(f.n_test), 1e-15);
  }
}

TEST(EvaluateFoldsTest, ErrorsCarryFoldContext) {
  const auto docs = small_corpus(20);
  const auto plan = make_folds(docs.size(), 10, 1);
  try {
    evaluate_folds(docs, plan, [&](const Fold& f, std::size_t i) -> std::vector<DocOutcome> {
      if (i == 3) throw Error("boom");
      return std::vector<DocOutcome>(f.test.size());
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fold 3"), std::string::npos);
  }
}

PipelineConfig pipeline(ClassifierKind kind, Vectorization v = Vectorization::kTfIdf) {
  PipelineConfig c;
  c.vectorization = v;
  c.classifier.kind = kind;
  c.classifier.mlp.hidden = 16;
  c.classifier.mlp.epochs = 5;
  c.classifier.mlp.batch_size = 16;
  return c;
}

TEST(EvaluateRunTest, DeterministicAcrossRunsAndJobs) {
  const auto synth = generate_synthetic({.n_docs = 120, .n_labels = 8, .synonyms_per_slot = 1, .overlap = 0.2,
                                         .synonym_rate = 0.3, .seed = 9});
  for (const auto kind : {ClassifierKind::kKnn, ClassifierKind::kLr, ClassifierKind::kMlpDt, ClassifierKind::kL2r}) {
    const auto config = pipeline(kind, Vectorization::kBm25Ct);
    const auto a = evaluate_run(config, synth.documents, &synth.thesaurus, {}, 10, 4, 1);
    const auto b = evaluate_run(config, synth.documents, &synth.thesaurus, {}, 10, 4, 3);
    std::ostringstream ca;
    std::ostringstream cb;
    write_csv_row(ca, a);
    write_csv_row(cb, b);
    EXPECT_EQ(ca.str(), cb.str()) << to_string(kind);
    for (std::size_t d = 0; d < synth.documents.size(); ++d) {
      EXPECT_EQ(a.predictions[d].labels, b.predictions[d].labels);
    }
  }
}

TEST(EvaluateRunTest, TestFoldGoldNeverLeaks) {
  const auto docs = generate_synthetic({.n_docs = 100, .n_labels = 8, .overlap = 0.3, .seed = 12}).documents;
  const std::size_t fold = 4;
  const auto plan = make_folds(docs.size(), 10, 7);
  auto corrupted = docs;
  for (const auto d : plan.folds[fold].test) corrupted[d].gold_labels = {"zz-unknown"};
  for (const auto kind : {ClassifierKind::kKnn, ClassifierKind::kRocchioDt, ClassifierKind::kBayesMultinomial,
                          ClassifierKind::kSvm, ClassifierKind::kLrDt, ClassifierKind::kL2rDt,
                          ClassifierKind::kMlp}) {
    const auto a = evaluate_run(pipeline(kind), docs, nullptr, {}, 10, 7);
    const auto b = evaluate_run(pipeline(kind), corrupted, nullptr, {}, 10, 7);
    for (const auto d : plan.folds[fold].test) {
      EXPECT_EQ(a.predictions[d].labels, b.predictions[d].labels) << to_string(kind);
    }
    EXPECT_GT(a.folds[fold].mean.f1, b.folds[fold].mean.f1) << to_string(kind);
    EXPECT_EQ(b.folds[fold].mean.f1, 0.0);
  }
}

TEST(EvaluateRunTest, ConceptVariantsRequireThesaurus) {
  EXPECT_THROW(evaluate_run(pipeline(ClassifierKind::kKnn, Vectorization::kCfIdf), small_corpus(), nullptr, {}, 10, 0),
               ConfigError);
}

TEST(EvaluateRunTest, CountsZeroVectorQueries) {
  auto docs = small_corpus(40);
  docs[5].title = "1234 5678";
  const auto report = evaluate_run(pipeline(ClassifierKind::kKnn), docs, nullptr, {}, 10, 0);
  EXPECT_EQ(report.zero_vector_queries, 1u);
  EXPECT_TRUE(report.predictions[5].zero_query);
}

TEST(ReportTest, CsvAndJsonLayout) {
  const auto docs = small_corpus(30);
  const auto report = evaluate_run(pipeline(ClassifierKind::kKnn), docs, nullptr, {}, 10, 5);
  std::ostringstream csv;
  write_csv_header(csv);
  write_csv_row(csv, report);
  const auto text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "input,vectorization,classifier,folds,seed,mean_f1,sd_f1,mean_precision,mean_recall,"
            "empty_predictions,zero_vector_queries");
  EXPECT_NE(text.find("\ntitle,tf-idf,knn,10,5,"), std::string::npos);
  const auto j = report_to_json(report);
  EXPECT_EQ(j["folds"].size(), 10u);
  EXPECT_EQ(j["config"]["seed"], 5);
  EXPECT_EQ(j["config"]["classifier"]["name"], "knn");
  EXPECT_DOUBLE_EQ(j["mean_f1"].get<double>(), report.mean.f1);
}

}  // namespace
}  // namespace semannot
