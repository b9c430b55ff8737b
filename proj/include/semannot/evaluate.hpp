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

#ifndef SEMANNOT_EVALUATE_HPP_
#define SEMANNOT_EVALUATE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "semannot/classifier.hpp"
#include "semannot/corpus.hpp"
#include "semannot/features.hpp"
#include "semannot/text.hpp"

namespace semannot {

struct Fold {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

struct FoldPlan {
  std::size_t n_folds = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> permutation;
  std::vector<Fold> folds;
};

// Seeded shuffle sliced into contiguous test blocks; the first n % k folds
// receive one extra document.
FoldPlan make_folds(std::size_t n_docs, std::size_t n_folds = 10, std::uint64_t seed = 0);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Set semantics; duplicates are ignored. Precision is 0 for an empty prediction.
Prf sample_prf(std::span<const ConceptId> predicted, std::span<const ConceptId> gold);

struct DocOutcome {
  std::vector<ConceptId> labels;
  bool zero_query = false;
};

struct DocPrediction {
  std::size_t ordinal = 0;
  std::size_t fold = 0;
  std::vector<ConceptId> labels;
  bool zero_query = false;
};

struct FoldResult {
  std::size_t fold = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  Prf mean;
  std::size_t empty_predictions = 0;
  std::size_t zero_vector_queries = 0;
};

struct PipelineConfig {
  TextField field = TextField::kTitle;
  Vectorization vectorization = Vectorization::kTfIdf;
  ClassifierConfig classifier;
};

struct EvalReport {
  PipelineConfig config;
  std::size_t n_docs = 0;
  std::size_t n_folds = 0;
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  Prf mean;  // unweighted mean of fold means
  double sd_f1 = 0.0;
  std::size_t empty_predictions = 0;
  std::size_t zero_vector_queries = 0;
  std::vector<DocPrediction> predictions;  // by corpus ordinal
};

// Returns one outcome per entry of fold.test, in that order.
using FoldPredictor = std::function<std::vector<DocOutcome>(const Fold& fold, std::size_t fold_index)>;

EvalReport evaluate_folds(std::span<const Document> docs, const FoldPlan& plan,
                          const FoldPredictor& predictor, std::size_t jobs = 1);

EvalReport evaluate_run(const PipelineConfig& config, std::span<const Document> docs,
                        const Thesaurus* thesaurus, const LemmaTable& lemmas,
                        std::size_t n_folds, std::uint64_t seed, std::size_t jobs = 1);

nlohmann::json report_to_json(const EvalReport& report);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const EvalReport& report);

}  // namespace semannot

#endif  // SEMANNOT_EVALUATE_HPP_
