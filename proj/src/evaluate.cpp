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

#include "semannot/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>
#include <ostream>
#include <random>
#include <set>

#include "semannot/error.hpp"
#include "semannot/labels.hpp"
#include "semannot/parallel.hpp"

namespace semannot {

FoldPlan make_folds(std::size_t n_docs, std::size_t n_folds, std::uint64_t seed) {
  if (n_folds == 0) throw ConfigError("number of folds must be positive");
  if (n_docs < n_folds) {
    throw Error("cannot split " + std::to_string(n_docs) + " documents into " +
                std::to_string(n_folds) + " folds");
  }
  FoldPlan plan;
  plan.n_folds = n_folds;
  plan.seed = seed;
  plan.permutation.resize(n_docs);
  std::iota(plan.permutation.begin(), plan.permutation.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(plan.permutation.begin(), plan.permutation.end(), rng);

  const std::size_t base = n_docs / n_folds;
  const std::size_t extra = n_docs % n_folds;
  std::vector<std::size_t> fold_of(n_docs);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < n_folds; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) fold_of[plan.permutation[pos++]] = f;
  }
  plan.folds.resize(n_folds);
  for (std::size_t d = 0; d < n_docs; ++d) {
    for (std::size_t f = 0; f < n_folds; ++f) {
      (f == fold_of[d] ? plan.folds[f].test : plan.folds[f].train).push_back(d);
    }
  }
  return plan;
}

Prf sample_prf(std::span<const ConceptId> predicted, std::span<const ConceptId> gold) {
  const std::set<ConceptId> p(predicted.begin(), predicted.end());
  const std::set<ConceptId> g(gold.begin(), gold.end());
  std::size_t hits = 0;
  for (const auto& id : p) hits += g.count(id);
  Prf r;
  r.precision = p.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(p.size());
  r.recall = g.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(g.size());
  const double s = r.precision + r.recall;
  r.f1 = s > 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
  return r;
}

EvalReport evaluate_folds(std::span<const Document> docs, const FoldPlan& plan,
                          const FoldPredictor& predictor, std::size_t jobs) {
  EvalReport report;
  report.n_docs = docs.size();
  report.n_folds = plan.n_folds;
  report.seed = plan.seed;
  report.folds.resize(plan.folds.size());
  report.predictions.resize(docs.size());

  parallel_for(plan.folds.size(), jobs, [&](std::size_t f) {
    const Fold& fold = plan.folds[f];
    std::vector<DocOutcome> outcomes;
    try {
      outcomes = predictor(fold, f);
    } catch (const std::exception& e) {
      throw Error("fold " + std::to_string(f) + ": " + e.what());
    }
    if (outcomes.size() != fold.test.size()) {
      throw Error("fold " + std::to_string(f) + ": predictor returned " +
                  std::to_string(outcomes.size()) + " outcomes for " +
                  std::to_string(fold.test.size()) + " documents");
    }
    FoldResult& result = report.folds[f];
    result.fold = f;
    result.n_train = fold.train.size();
    result.n_test = fold.test.size();
    for (std::size_t i = 0; i < fold.test.size(); ++i) {
      const std::size_t d = fold.test[i];
      auto& outcome = outcomes[i];
      const Prf prf = sample_prf(outcome.labels, docs[d].gold_labels);
      result.mean.precision += prf.precision;
      result.mean.recall += prf.recall;
      result.mean.f1 += prf.f1;
      if (outcome.labels.empty()) ++result.empty_predictions;
      if (outcome.zero_query) ++result.zero_vector_queries;
      report.predictions[d] = {d, f, std::move(outcome.labels), outcome.zero_query};
    }
    const double n = static_cast<double>(fold.test.size());
    result.mean.precision /= n;
    result.mean.recall /= n;
    result.mean.f1 /= n;
  });

  const double k = static_cast<double>(report.folds.size());
  for (const auto& r : report.folds) {
    report.mean.precision += r.mean.precision;
    report.mean.recall += r.mean.recall;
    report.mean.f1 += r.mean.f1;
    report.empty_predictions += r.empty_predictions;
    report.zero_vector_queries += r.zero_vector_queries;
  }
  report.mean.precision /= k;
  report.mean.recall /= k;
  report.mean.f1 /= k;
  double ss = 0.0;
  for (const auto& r : report.folds) ss += (r.mean.f1 - report.mean.f1) * (r.mean.f1 - report.mean.f1);
  report.sd_f1 = report.folds.size() > 1 ? std::sqrt(ss / (k - 1.0)) : 0.0;
  return report;
}

EvalReport evaluate_run(const PipelineConfig& config, std::span<const Document> docs,
                        const Thesaurus* thesaurus, const LemmaTable& lemmas,
                        std::size_t n_folds, std::uint64_t seed, std::size_t jobs) {
  const FoldPlan plan = make_folds(docs.size(), n_folds, seed);
  const Preprocessor preprocess(lemmas);

  std::shared_ptr<const ConceptMatcher> matcher;
  if (uses_concepts(config.vectorization)) {
    if (thesaurus == nullptr) {
      throw ConfigError(std::string(to_string(config.vectorization)) + " requires a thesaurus");
    }
    matcher = std::make_shared<const ConceptMatcher>(ConceptMatcher::build(*thesaurus, preprocess));
  }

  std::vector<TokenSequence> tokens(docs.size());
  parallel_for(docs.size(), jobs, [&](std::size_t d) { tokens[d] = preprocess(docs[d].text(config.field)); });

  const std::size_t fold_jobs = std::min(jobs, plan.n_folds);
  const std::size_t inner_jobs = std::max<std::size_t>(1, jobs / std::max<std::size_t>(1, fold_jobs));

  auto predictor = [&](const Fold& fold, std::size_t f) {
    std::vector<TokenSequence> train_tokens;
    std::vector<Document> train_docs;
    train_tokens.reserve(fold.train.size());
    train_docs.reserve(fold.train.size());
    for (const auto d : fold.train) {
      train_tokens.push_back(tokens[d]);
      train_docs.push_back(docs[d]);
    }
    const Vectorizer vectorizer = Vectorizer::fit(config.vectorization, train_tokens, matcher);
    const LabelSpace space = LabelSpace::from_documents(train_docs);

    TrainingSet data;
    data.labels = LabelMatrix::build(train_docs, space);
    data.features.reserve(train_tokens.size());
    data.counts.reserve(train_tokens.size());
    for (const auto& t : train_tokens) {
      auto row = vectorizer.transform(t);
      data.features.push_back(std::move(row.features));
      data.counts.push_back(std::move(row.counts));
    }

    ClassifierConfig cc = config.classifier;
    const std::uint64_t fold_seed = seed * 1000003ULL + f;
    cc.linear.seed = fold_seed;
    cc.linear.jobs = inner_jobs;
    cc.mlp.seed = fold_seed;
    const auto classifier = train_classifier(cc, data);

    std::vector<DocOutcome> out;
    out.reserve(fold.test.size());
    for (const auto d : fold.test) {
      try {
        const auto p = classifier->predict(vectorizer.transform(tokens[d]));
        out.push_back({space.decode(p.labels), p.zero_query});
      } catch (const std::exception& e) {
        throw Error("document '" + docs[d].id + "': " + e.what());
      }
    }
    return out;
  };

  EvalReport report = evaluate_folds(docs, plan, predictor, fold_jobs);
  report.config = config;
  return report;
}

nlohmann::json report_to_json(const EvalReport& r) {
  using nlohmann::json;
  json folds = json::array();
  for (const auto& f : r.folds) {
    folds.push_back({{"fold", f.fold},
                     {"n_train", f.n_train},
                     {"n_test", f.n_test},
                     {"precision", f.mean.precision},
                     {"recall", f.mean.recall},
                     {"f1", f.mean.f1},
                     {"empty_predictions", f.empty_predictions},
                     {"zero_vector_queries", f.zero_vector_queries}});
  }
  const auto& c = r.config.classifier;
  json classifier = {{"name", to_string(c.kind)},
                     {"knn_k", c.knn_k},
                     {"l2r_k", c.l2r_k},
                     {"nb_alpha", c.nb_alpha},
                     {"alpha", c.linear.alpha},
                     {"epochs", c.linear.epochs},
                     {"mlp_hidden", c.mlp.hidden},
                     {"mlp_activation", to_string(c.mlp.activation)},
                     {"mlp_threshold", c.mlp.threshold},
                     {"mlp_epochs", c.mlp.epochs},
                     {"mlp_batch_size", c.mlp.batch_size},
                     {"top_m", c.top_m}};
  return {{"config",
           {{"field", to_string(r.config.field)},
            {"vectorization", to_string(r.config.vectorization)},
            {"classifier", classifier},
            {"folds", r.n_folds},
            {"seed", r.seed}}},
          {"n_docs", r.n_docs},
          {"folds", folds},
          {"mean_precision", r.mean.precision},
          {"mean_recall", r.mean.recall},
          {"mean_f1", r.mean.f1},
          {"sd_f1", r.sd_f1},
          {"empty_predictions", r.empty_predictions},
          {"zero_vector_queries", r.zero_vector_queries}};
}

void write_csv_header(std::ostream& out) {
  out << "input,vectorization,classifier,folds,seed,mean_f1,sd_f1,mean_precision,mean_recall,"
         "empty_predictions,zero_vector_queries\n";
}

void write_csv_row(std::ostream& out, const EvalReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f,%.6f", r.mean.f1, r.sd_f1, r.mean.precision,
                r.mean.recall);
  out << to_string(r.config.field) << ',' << to_string(r.config.vectorization) << ','
      << to_string(r.config.classifier.kind) << ',' << r.n_folds << ',' << r.seed << ',' << buf
      << ',' << r.empty_predictions << ',' << r.zero_vector_queries << '\n';
}

}  // namespace semannot
