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

#include <gtest/gtest.h>

#include "semannot/classifier.hpp"
#include "semannot/error.hpp"
#include "semannot/synthetic.hpp"
#include "test_util.hpp"

namespace semannot {
namespace {

ClassifierConfig small_config(ClassifierKind kind) {
  ClassifierConfig c;
  c.kind = kind;
  c.knn_k = 3;
  c.l2r_k = 10;
  c.mlp.hidden = 12;
  c.mlp.epochs = 4;
  c.mlp.batch_size = 16;
  c.linear.epochs = 3;
  return c;
}

class RoundTripTest : public ::testing::TestWithParam<ClassifierKind> {};

TEST_P(RoundTripTest, SerializedModelPredictsIdentically) {
  const auto synth = generate_synthetic({.n_docs = 80, .n_labels = 6, .synonyms_per_slot = 1,
                                         .overlap = 0.2, .synonym_rate = 0.3, .seed = 5});
  const auto annotator = Annotator::train(synth.documents, TextField::kTitle, Vectorization::kCtfIdf,
                                          small_config(GetParam()), &synth.thesaurus, {});
  const auto text = annotator.to_json().dump();
  const auto restored = Annotator::from_json(nlohmann::json::parse(text));
  EXPECT_EQ(restored.classifier().kind(), GetParam());
  EXPECT_EQ(restored.to_json().dump(), text);
  const auto probes = generate_synthetic({.n_docs = 40, .n_labels = 6, .synonyms_per_slot = 1,
                                          .overlap = 0.4, .synonym_rate = 0.5, .seed = 77});
  for (const auto& doc : probes.documents) EXPECT_EQ(annotator.annotate(doc), restored.annotate(doc));
}

INSTANTIATE_TEST_SUITE_P(AllKinds, RoundTripTest, ::testing::ValuesIn(all_classifiers()),
                         [](const auto& info) {
                           std::string name(to_string(info.param));
                           for (auto& ch : name) {
                             if (ch == '-') ch = '_';
                           }
                           return name;
                         });

TEST(ClassifierNamesTest, ParseInvertsToString) {
  EXPECT_EQ(all_classifiers().size(), 11u);
  for (const auto kind : all_classifiers()) EXPECT_EQ(parse_classifier(to_string(kind)), kind);
  try {
    parse_classifier("svm2");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("l2r-dt"), std::string::npos);
  }
}

TEST(AnnotatorTest, SaveAndLoad) {
  const auto synth = generate_synthetic({.n_docs = 50, .n_labels = 5, .fulltext_mentions = 2, .seed = 2});
  const auto annotator = Annotator::train(synth.documents, TextField::kFulltext, Vectorization::kBm25,
                                          small_config(ClassifierKind::kKnn), nullptr, {});
  testing::TempDir dir{"classifier"};
  annotator.save(dir.file("model.json"));
  const auto loaded = Annotator::load(dir.file("model.json"));
  EXPECT_EQ(loaded.field(), TextField::kFulltext);
  for (const auto& doc : synth.documents) EXPECT_EQ(annotator.annotate(doc), loaded.annotate(doc));
}

TEST(AnnotatorTest, SelfRetrievalWithOneNeighbour) {
  const auto synth = generate_synthetic({.n_docs = 60, .n_labels = 5, .fulltext_mentions = 2, .seed = 8});
  auto config = small_config(ClassifierKind::kKnn);
  config.knn_k = 1;
  const auto annotator = Annotator::train(synth.documents, TextField::kFulltext, Vectorization::kTfIdf,
                                          config, nullptr, {});
  std::size_t exact = 0;
  for (const auto& doc : synth.documents) exact += annotator.annotate(doc) == doc.gold_labels;
  EXPECT_GE(exact, 55u);
}

TEST(AnnotatorTest, RejectsInconsistentContainers) {
  const auto synth = generate_synthetic({.n_docs = 40, .n_labels = 5, .seed = 2});
  const auto j = Annotator::train(synth.documents, TextField::kTitle, Vectorization::kTfIdf,
                                  small_config(ClassifierKind::kLr), nullptr, {})
                     .to_json();
  auto fewer_labels = j;
  fewer_labels["labels"].erase(fewer_labels["labels"].size() - 1);
  EXPECT_THROW(Annotator::from_json(fewer_labels), Error);
  auto wrong_dim = j;
  wrong_dim["classifier"]["dim"] = j["classifier"]["dim"].get<std::size_t>() + 1;
  EXPECT_THROW(Annotator::from_json(wrong_dim), Error);
  auto wrong_format = j;
  wrong_format["format"] = "other";
  EXPECT_THROW(Annotator::from_json(wrong_format), Error);
  EXPECT_THROW(Annotator::from_json(nlohmann::json::parse(R"({"format":"semannot-model"})")), Error);
}

TEST(AnnotatorTest, MissingFileIsAnError) {
  testing::TempDir dir{"classifier"};
  EXPECT_THROW(Annotator::load(dir.file("absent.json")), Error);
}

}  // namespace
}  // namespace semannot
