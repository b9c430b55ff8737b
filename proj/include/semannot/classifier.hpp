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

#ifndef SEMANNOT_CLASSIFIER_HPP_
#define SEMANNOT_CLASSIFIER_HPP_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "semannot/corpus.hpp"
#include "semannot/decision_tree.hpp"
#include "semannot/features.hpp"
#include "semannot/labels.hpp"
#include "semannot/linear.hpp"
#include "semannot/mlp.hpp"
#include "semannot/text.hpp"

namespace semannot {

enum class ClassifierKind {
  kKnn,
  kRocchioDt,
  kBayesBernoulli,
  kBayesMultinomial,
  kSvm,
  kLr,
  kLrDt,
  kL2r,
  kL2rDt,
  kMlp,
  kMlpDt,
};

ClassifierKind parse_classifier(std::string_view name);
std::string_view to_string(ClassifierKind kind);
const std::vector<ClassifierKind>& all_classifiers();

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::kKnn;
  std::size_t knn_k = 1;
  std::size_t l2r_k = 45;
  double nb_alpha = 1e-5;
  LinearConfig linear;
  MlpConfig mlp;
  std::size_t top_m = 30;
  TreeConfig tree;
};

struct Prediction {
  LabelSet labels;
  bool zero_query = false;
};

// A fitted multi-label classifier over feature rows.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ClassifierKind kind() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::size_t n_labels() const = 0;
  virtual Prediction predict(const FeatureRow& row) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

std::unique_ptr<Classifier> train_classifier(const ClassifierConfig& config,
                                             const TrainingSet& data);
std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);

// End-to-end annotation pipeline: preprocessing, fitted vectorizer, label map
// and classifier. Serialized as one versioned JSON container.
class Annotator {
 public:
  static constexpr int kFormatVersion = 1;

  Annotator(TextField field, Preprocessor preprocess, Vectorizer vectorizer, LabelSpace labels,
            std::unique_ptr<Classifier> classifier);

  static Annotator train(std::span<const Document> docs, TextField field,
                         Vectorization vectorization, const ClassifierConfig& config,
                         const Thesaurus* thesaurus, const LemmaTable& lemmas);

  std::vector<ConceptId> annotate(const Document& doc) const;

  nlohmann::json to_json() const;
  static Annotator from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static Annotator load(const std::filesystem::path& path);

  TextField field() const { return field_; }
  const Vectorizer& vectorizer() const { return vectorizer_; }
  const LabelSpace& labels() const { return labels_; }
  const Classifier& classifier() const { return *classifier_; }

 private:
  TextField field_;
  Preprocessor preprocess_;
  Vectorizer vectorizer_;
  LabelSpace labels_;
  std::unique_ptr<Classifier> classifier_;
};

}  // namespace semannot

#endif  // SEMANNOT_CLASSIFIER_HPP_
