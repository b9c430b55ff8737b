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

#include "semannot/classifier.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <variant>

#include "semannot/error.hpp"
#include "semannot/knn.hpp"
#include "semannot/multilabel.hpp"
#include "semannot/naive_bayes.hpp"
#include "semannot/ranking.hpp"
#include "semannot/rocchio.hpp"

namespace semannot {

using json = nlohmann::json;

namespace {

struct KindInfo {
  ClassifierKind kind;
  std::string_view name;
};

constexpr std::array<KindInfo, 11> kKinds = {{
    {ClassifierKind::kKnn, "knn"},
    {ClassifierKind::kRocchioDt, "rocchio-dt"},
    {ClassifierKind::kBayesBernoulli, "bayes-bernoulli"},
    {ClassifierKind::kBayesMultinomial, "bayes-multinomial"},
    {ClassifierKind::kSvm, "svm"},
    {ClassifierKind::kLr, "lr"},
    {ClassifierKind::kLrDt, "lr-dt"},
    {ClassifierKind::kL2r, "l2r"},
    {ClassifierKind::kL2rDt, "l2r-dt"},
    {ClassifierKind::kMlp, "mlp"},
    {ClassifierKind::kMlpDt, "mlp-dt"},
}};

// ---- JSON encoding of model parts -------------------------------------------

json encode(const SparseVector& v) {
  return {{"dim", v.dim()},
          {"i", std::vector<FeatureIndex>(v.indices().begin(), v.indices().end())},
          {"w", std::vector<double>(v.weights().begin(), v.weights().end())}};
}

SparseVector decode_vector(const json& j) {
  return SparseVector::from_sorted(j.at("i").get<std::vector<FeatureIndex>>(),
                                   j.at("w").get<std::vector<double>>(),
                                   j.at("dim").get<std::size_t>());
}

json encode(const std::vector<SparseVector>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(encode(v));
  return arr;
}

std::vector<SparseVector> decode_vectors(const json& j) {
  std::vector<SparseVector> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(decode_vector(v));
  return out;
}

json encode(const LabelMatrix& m) { return {{"n_labels", m.n_labels}, {"rows", m.rows}}; }

LabelMatrix decode_labels(const json& j) {
  LabelMatrix m;
  m.n_labels = j.at("n_labels").get<std::size_t>();
  m.rows = j.at("rows").get<std::vector<LabelSet>>();
  for (const auto& row : m.rows) {
    for (const auto l : row) {
      if (l >= m.n_labels) throw Error("model: label index out of range");
    }
  }
  return m;
}

json encode(const BinaryLinear& m) { return {{"w", m.w}, {"b", m.b}}; }

BinaryLinear decode_binary(const json& j) {
  return {j.at("w").get<std::vector<double>>(), j.at("b").get<double>()};
}

json encode(const DecisionTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes()) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.positive, n.n_samples, n.n_positive});
  }
  return {{"n_features", t.n_features()}, {"nodes", nodes}};
}

DecisionTree decode_tree(const json& j) {
  std::vector<DecisionTree::Node> nodes;
  for (const auto& n : j.at("nodes")) {
    DecisionTree::Node node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.positive = n.at(4).get<bool>();
    node.n_samples = n.at(5).get<std::size_t>();
    node.n_positive = n.at(6).get<std::size_t>();
    nodes.push_back(node);
  }
  return DecisionTree(j.at("n_features").get<std::size_t>(), std::move(nodes));
}

json encode(const StackedModel& m) {
  json trees = json::array();
  for (const auto& t : m.trees()) trees.push_back(t ? encode(*t) : json(nullptr));
  return {{"top_m", m.top_m()}, {"cutoff", m.cutoff()}, {"trees", trees}};
}

StackedModel decode_stacked(const json& j) {
  std::vector<std::optional<DecisionTree>> trees;
  for (const auto& t : j.at("trees")) {
    if (t.is_null()) {
      trees.emplace_back();
    } else {
      trees.emplace_back(decode_tree(t));
    }
  }
  return StackedModel(j.at("top_m").get<std::size_t>(), j.at("cutoff").get<std::size_t>(),
                      std::move(trees));
}

json encode(const LinearModel& m) {
  json models = json::array();
  for (std::size_t l = 0; l < m.n_labels(); ++l) models.push_back(encode(m.label_model(static_cast<LabelIndex>(l))));
  return {{"loss", to_string(m.loss())}, {"dim", m.dim()}, {"models", models}};
}

LinearModel decode_linear(const json& j) {
  std::vector<BinaryLinear> models;
  for (const auto& m : j.at("models")) models.push_back(decode_binary(m));
  const Loss loss = j.at("loss").get<std::string>() == "hinge" ? Loss::kHinge : Loss::kLogistic;
  return LinearModel(loss, j.at("dim").get<std::size_t>(), std::move(models));
}

json encode(const MlpModel& m) {
  const auto& p = m.parameters();
  return {{"activation", to_string(m.activation())},
          {"threshold", m.threshold()},
          {"inputs", p.inputs},
          {"hidden", p.hidden},
          {"outputs", p.outputs},
          {"w1", p.w1},
          {"b1", p.b1},
          {"w2", p.w2},
          {"b2", p.b2}};
}

MlpModel decode_mlp(const json& j) {
  MlpParameters p;
  p.inputs = j.at("inputs").get<std::size_t>();
  p.hidden = j.at("hidden").get<std::size_t>();
  p.outputs = j.at("outputs").get<std::size_t>();
  p.w1 = j.at("w1").get<std::vector<double>>();
  p.b1 = j.at("b1").get<std::vector<double>>();
  p.w2 = j.at("w2").get<std::vector<double>>();
  p.b2 = j.at("b2").get<std::vector<double>>();
  return MlpModel(std::move(p), parse_activation(j.at("activation").get<std::string>()),
                  j.at("threshold").get<double>());
}

json encode(const RankerModel& r) {
  return {{"mean", r.mean()}, {"scale", r.scale()}, {"linear", encode(r.linear())}, {"cutoff", r.cutoff()}};
}

RankerModel decode_ranker(const json& j) {
  return RankerModel(j.at("mean").get<std::array<double, 4>>(), j.at("scale").get<std::array<double, 4>>(),
                     decode_binary(j.at("linear")), j.at("cutoff").get<std::size_t>());
}

json encode(const L2rModel& m) {
  return {{"k", m.k()}, {"vectors", encode(m.index().vectors())}, {"labels", encode(m.labels())},
          {"ranker", encode(m.ranker())}};
}

L2rModel decode_l2r(const json& j) {
  return L2rModel(KnnIndex(decode_vectors(j.at("vectors"))), decode_labels(j.at("labels")),
                  j.at("k").get<std::size_t>(), decode_ranker(j.at("ranker")));
}

json encode(const NaiveBayesModel& m) {
  json labels = json::array();
  for (const auto& s : m.label_stats()) {
    std::vector<FeatureIndex> f;
    std::vector<double> c;
    for (const auto& [idx, count] : s.feature_counts) {
      f.push_back(idx);
      c.push_back(count);
    }
    labels.push_back({{"docs", s.docs}, {"total", s.total}, {"f", f}, {"c", c}});
  }
  return {{"variant", m.variant() == NbVariant::kBernoulli ? "bernoulli" : "multinomial"},
          {"alpha", m.alpha()},
          {"dim", m.dim()},
          {"n_docs", m.n_docs()},
          {"totals", m.feature_totals()},
          {"labels", labels}};
}

NaiveBayesModel decode_nb(const json& j) {
  std::vector<NaiveBayesModel::LabelStats> labels;
  for (const auto& l : j.at("labels")) {
    NaiveBayesModel::LabelStats s;
    s.docs = l.at("docs").get<double>();
    s.total = l.at("total").get<double>();
    const auto f = l.at("f").get<std::vector<FeatureIndex>>();
    const auto c = l.at("c").get<std::vector<double>>();
    if (f.size() != c.size()) throw Error("model: naive bayes feature counts misaligned");
    for (std::size_t i = 0; i < f.size(); ++i) s.feature_counts.emplace_back(f[i], c[i]);
    labels.push_back(std::move(s));
  }
  const NbVariant variant = j.at("variant").get<std::string>() == "bernoulli" ? NbVariant::kBernoulli
                                                                               : NbVariant::kMultinomial;
  return NaiveBayesModel(variant, j.at("alpha").get<double>(), j.at("dim").get<std::size_t>(),
                         j.at("n_docs").get<double>(), j.at("totals").get<std::vector<double>>(),
                         std::move(labels));
}

// ---- Concrete classifiers ------------------------------------------------

class KnnClassifier final : public Classifier {
 public:
  explicit KnnClassifier(KnnModel model) : model_(std::move(model)) {}

  ClassifierKind kind() const override { return ClassifierKind::kKnn; }
  std::size_t dim() const override { return model_.index().dim(); }
  std::size_t n_labels() const override { return model_.labels().n_labels; }

  Prediction predict(const FeatureRow& row) const override {
    auto p = model_.predict(row.features);
    return {std::move(p.labels), p.zero_query};
  }

  json to_json() const override {
    return {{"kind", "knn"}, {"k", model_.k()}, {"vectors", encode(model_.index().vectors())},
            {"labels", encode(model_.labels())}};
  }

 private:
  KnnModel model_;
};

class BayesClassifier final : public Classifier {
 public:
  explicit BayesClassifier(NaiveBayesModel model) : model_(std::move(model)) {}

  ClassifierKind kind() const override {
    return model_.variant() == NbVariant::kBernoulli ? ClassifierKind::kBayesBernoulli
                                                     : ClassifierKind::kBayesMultinomial;
  }
  std::size_t dim() const override { return model_.dim(); }
  std::size_t n_labels() const override { return model_.n_labels(); }

  // Naive Bayes reads the raw counts, not the re-weighted features.
  Prediction predict(const FeatureRow& row) const override {
    return {model_.decide(row.counts), row.features.empty()};
  }

  json to_json() const override {
    json j = encode(model_);
    j["kind"] = to_string(kind());
    return j;
  }

 private:
  NaiveBayesModel model_;
};

class LinearClassifier final : public Classifier {
 public:
  explicit LinearClassifier(LinearModel model) : model_(std::move(model)) {}

  ClassifierKind kind() const override {
    return model_.loss() == Loss::kHinge ? ClassifierKind::kSvm : ClassifierKind::kLr;
  }
  std::size_t dim() const override { return model_.dim(); }
  std::size_t n_labels() const override { return model_.n_labels(); }

  Prediction predict(const FeatureRow& row) const override {
    return {model_.decide(row.features), row.features.empty()};
  }

  json to_json() const override {
    json j = encode(model_);
    j["kind"] = to_string(kind());
    return j;
  }

 private:
  LinearModel model_;
};

class L2rClassifier final : public Classifier {
 public:
  explicit L2rClassifier(L2rModel model) : model_(std::move(model)) {}

  ClassifierKind kind() const override { return ClassifierKind::kL2r; }
  std::size_t dim() const override { return model_.index().dim(); }
  std::size_t n_labels() const override { return model_.labels().n_labels; }

  Prediction predict(const FeatureRow& row) const override {
    return {model_.decide(row.features), row.features.empty()};
  }

  json to_json() const override {
    json j = encode(model_);
    j["kind"] = "l2r";
    return j;
  }

 private:
  L2rModel model_;
};

class MlpClassifier final : public Classifier {
 public:
  explicit MlpClassifier(MlpModel model) : model_(std::move(model)) {}

  ClassifierKind kind() const override { return ClassifierKind::kMlp; }
  std::size_t dim() const override { return model_.parameters().inputs; }
  std::size_t n_labels() const override { return model_.parameters().outputs; }

  Prediction predict(const FeatureRow& row) const override {
    return {model_.decide(row.features), row.features.empty()};
  }

  json to_json() const override {
    json j = encode(model_);
    j["kind"] = "mlp";
    return j;
  }

 private:
  MlpModel model_;
};

// Base ranker + per-label decision-tree stacking (the *-dt kinds).
class StackedClassifier final : public Classifier {
 public:
  using Base = std::variant<RocchioModel, LinearModel, L2rModel, MlpModel>;

  StackedClassifier(ClassifierKind kind, Base base, StackedModel stacked)
      : kind_(kind), base_(std::move(base)), stacked_(std::move(stacked)) {}

  ClassifierKind kind() const override { return kind_; }

  std::size_t dim() const override {
    return std::visit(
        [](const auto& m) -> std::size_t {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, RocchioModel>) {
            return m.centroids().empty() ? 0 : m.centroids().front().dim();
          } else if constexpr (std::is_same_v<T, LinearModel>) {
            return m.dim();
          } else if constexpr (std::is_same_v<T, L2rModel>) {
            return m.index().dim();
          } else {
            return m.parameters().inputs;
          }
        },
        base_);
  }

  std::size_t n_labels() const override {
    return std::visit(
        [](const auto& m) -> std::size_t {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, RocchioModel>) {
            return m.n_labels();
          } else if constexpr (std::is_same_v<T, LinearModel>) {
            return m.n_labels();
          } else if constexpr (std::is_same_v<T, L2rModel>) {
            return m.labels().n_labels;
          } else {
            return m.parameters().outputs;
          }
        },
        base_);
  }

  Prediction predict(const FeatureRow& row) const override {
    const Ranking ranking = std::visit([&](const auto& m) { return m.rank(row.features); }, base_);
    return {stacked_.decide(ranking), row.features.empty()};
  }

  json to_json() const override {
    json base = std::visit(
        [](const auto& m) -> json {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, RocchioModel>) {
            return {{"centroids", encode(m.centroids())}};
          } else {
            return encode(m);
          }
        },
        base_);
    return {{"kind", to_string(kind_)}, {"base", base}, {"stacking", encode(stacked_)}};
  }

  static std::unique_ptr<Classifier> from_json(ClassifierKind kind, const json& j) {
    const json& b = j.at("base");
    Base base = [&]() -> Base {
      switch (kind) {
        case ClassifierKind::kRocchioDt: return RocchioModel(decode_vectors(b.at("centroids")));
        case ClassifierKind::kLrDt: return decode_linear(b);
        case ClassifierKind::kL2rDt: return decode_l2r(b);
        default: return decode_mlp(b);
      }
    }();
    return std::make_unique<StackedClassifier>(kind, std::move(base), decode_stacked(j.at("stacking")));
  }

 private:
  ClassifierKind kind_;
  Base base_;
  StackedModel stacked_;
};

template <typename Model>
std::vector<Ranking> training_rankings(const Model& model, const TrainingSet& data) {
  std::vector<Ranking> rankings;
  rankings.reserve(data.size());
  for (const auto& x : data.features) rankings.push_back(model.rank(x));
  return rankings;
}

// L2R training rankings come from leave-one-out candidates, as in ranker training.
std::vector<Ranking> training_rankings(const L2rModel& model, const TrainingSet& data) {
  const auto priors = label_priors(data.labels);
  std::vector<Ranking> rankings;
  rankings.reserve(data.size());
  for (std::size_t d = 0; d < data.size(); ++d) {
    rankings.push_back(model.ranker().rank(
        generate_candidates(data.features[d], model.index(), data.labels, priors, model.k(), d)));
  }
  return rankings;
}

template <typename Model>
std::unique_ptr<Classifier> stack(ClassifierKind kind, Model base, const TrainingSet& data,
                                  const ClassifierConfig& config) {
  auto stacked = StackedModel::fit(training_rankings(base, data), data.labels, config.top_m, config.tree);
  return std::make_unique<StackedClassifier>(kind, std::move(base), std::move(stacked));
}

}  // namespace

ClassifierKind parse_classifier(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  std::string valid;
  for (const auto& k : kKinds) {
    if (!valid.empty()) valid += ", ";
    valid += k.name;
  }
  throw ConfigError("unknown classifier '" + std::string(name) + "' (valid: " + valid + ")");
}

std::string_view to_string(ClassifierKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  throw Error("unknown classifier kind");
}

const std::vector<ClassifierKind>& all_classifiers() {
  static const std::vector<ClassifierKind> all = [] {
    std::vector<ClassifierKind> v;
    for (const auto& k : kKinds) v.push_back(k.kind);
    return v;
  }();
  return all;
}

std::unique_ptr<Classifier> train_classifier(const ClassifierConfig& config,
                                             const TrainingSet& data) {
  if (data.size() == 0) throw Error("classifier: empty training set");
  const auto& x = data.features;
  const auto& y = data.labels;
  LinearConfig linear = config.linear;
  switch (config.kind) {
    case ClassifierKind::kKnn:
      return std::make_unique<KnnClassifier>(KnnModel(x, y, config.knn_k));
    case ClassifierKind::kRocchioDt:
      return stack(config.kind, RocchioModel::fit(x, y), data, config);
    case ClassifierKind::kBayesBernoulli:
      return std::make_unique<BayesClassifier>(
          NaiveBayesModel::fit(data.counts, y, NbVariant::kBernoulli, config.nb_alpha));
    case ClassifierKind::kBayesMultinomial:
      return std::make_unique<BayesClassifier>(
          NaiveBayesModel::fit(data.counts, y, NbVariant::kMultinomial, config.nb_alpha));
    case ClassifierKind::kSvm:
      linear.loss = Loss::kHinge;
      return std::make_unique<LinearClassifier>(LinearModel::fit(x, y, linear));
    case ClassifierKind::kLr:
      linear.loss = Loss::kLogistic;
      return std::make_unique<LinearClassifier>(LinearModel::fit(x, y, linear));
    case ClassifierKind::kLrDt:
      linear.loss = Loss::kLogistic;
      return stack(config.kind, LinearModel::fit(x, y, linear), data, config);
    case ClassifierKind::kL2r:
      linear.loss = Loss::kLogistic;
      return std::make_unique<L2rClassifier>(L2rModel::fit(x, y, config.l2r_k, linear));
    case ClassifierKind::kL2rDt:
      linear.loss = Loss::kLogistic;
      return stack(config.kind, L2rModel::fit(x, y, config.l2r_k, linear), data, config);
    case ClassifierKind::kMlp:
      return std::make_unique<MlpClassifier>(MlpModel::fit(x, y, config.mlp));
    case ClassifierKind::kMlpDt:
      return stack(config.kind, MlpModel::fit(x, y, config.mlp), data, config);
  }
  throw Error("unknown classifier kind");
}

std::unique_ptr<Classifier> classifier_from_json(const json& j) {
  const ClassifierKind kind = parse_classifier(j.at("kind").get<std::string>());
  switch (kind) {
    case ClassifierKind::kKnn:
      return std::make_unique<KnnClassifier>(KnnModel(decode_vectors(j.at("vectors")),
                                                      decode_labels(j.at("labels")),
                                                      j.at("k").get<std::size_t>()));
    case ClassifierKind::kBayesBernoulli:
    case ClassifierKind::kBayesMultinomial:
      return std::make_unique<BayesClassifier>(decode_nb(j));
    case ClassifierKind::kSvm:
    case ClassifierKind::kLr:
      return std::make_unique<LinearClassifier>(decode_linear(j));
    case ClassifierKind::kL2r:
      return std::make_unique<L2rClassifier>(decode_l2r(j));
    case ClassifierKind::kMlp:
      return std::make_unique<MlpClassifier>(decode_mlp(j));
    case ClassifierKind::kRocchioDt:
    case ClassifierKind::kLrDt:
    case ClassifierKind::kL2rDt:
    case ClassifierKind::kMlpDt:
      return StackedClassifier::from_json(kind, j);
  }
  throw Error("unknown classifier kind");
}

// ---- Annotator ---------------------------------------------------------------

namespace {

json encode(const WeightingModel& m) {
  const char* scheme = m.scheme == Weighting::kIdf ? "idf" : m.scheme == Weighting::kBm25 ? "bm25" : "none";
  return {{"scheme", scheme}, {"idf", m.idf}, {"k", m.bm25_k}, {"b", m.bm25_b},
          {"mean_doc_len", m.mean_doc_len}, {"n_docs", m.n_docs}};
}

WeightingModel decode_weighting(const json& j) {
  WeightingModel m;
  const auto scheme = j.at("scheme").get<std::string>();
  m.scheme = scheme == "idf" ? Weighting::kIdf : scheme == "bm25" ? Weighting::kBm25 : Weighting::kNone;
  m.idf = j.at("idf").get<std::vector<double>>();
  m.bm25_k = j.at("k").get<double>();
  m.bm25_b = j.at("b").get<double>();
  m.mean_doc_len = j.at("mean_doc_len").get<double>();
  m.n_docs = j.at("n_docs").get<std::size_t>();
  return m;
}

}  // namespace

Annotator::Annotator(TextField field, Preprocessor preprocess, Vectorizer vectorizer,
                     LabelSpace labels, std::unique_ptr<Classifier> classifier)
    : field_(field),
      preprocess_(std::move(preprocess)),
      vectorizer_(std::move(vectorizer)),
      labels_(std::move(labels)),
      classifier_(std::move(classifier)) {
  if (!classifier_) throw Error("annotator: missing classifier");
  if (classifier_->dim() != vectorizer_.dim()) {
    throw Error("model: classifier dimension " + std::to_string(classifier_->dim()) +
                " does not match vectorizer dimension " + std::to_string(vectorizer_.dim()));
  }
  if (classifier_->n_labels() != labels_.size()) {
    throw Error("model: classifier label count does not match the label map");
  }
}

Annotator Annotator::train(std::span<const Document> docs, TextField field,
                           Vectorization vectorization, const ClassifierConfig& config,
                           const Thesaurus* thesaurus, const LemmaTable& lemmas) {
  if (docs.empty()) throw Error("annotator: empty training corpus");
  Preprocessor preprocess(lemmas);
  std::shared_ptr<const ConceptMatcher> matcher;
  if (uses_concepts(vectorization)) {
    if (thesaurus == nullptr) throw ConfigError(std::string(to_string(vectorization)) + " requires a thesaurus");
    matcher = std::make_shared<const ConceptMatcher>(ConceptMatcher::build(*thesaurus, preprocess));
  }
  std::vector<TokenSequence> tokens;
  tokens.reserve(docs.size());
  for (const auto& d : docs) tokens.push_back(preprocess(d.text(field)));
  auto vectorizer = Vectorizer::fit(vectorization, tokens, matcher);
  LabelSpace labels = LabelSpace::from_documents(docs);
  TrainingSet data;
  data.labels = LabelMatrix::build(docs, labels);
  for (const auto& t : tokens) {
    auto row = vectorizer.transform(t);
    data.features.push_back(std::move(row.features));
    data.counts.push_back(std::move(row.counts));
  }
  auto classifier = train_classifier(config, data);
  return Annotator(field, std::move(preprocess), std::move(vectorizer), std::move(labels),
                   std::move(classifier));
}

std::vector<ConceptId> Annotator::annotate(const Document& doc) const {
  const auto row = vectorizer_.transform(preprocess_(doc.text(field_)));
  return labels_.decode(classifier_->predict(row).labels);
}

json Annotator::to_json() const {
  json lemmas = json::array();
  for (const auto& [surface, lemma] : preprocess_.lemma_table().entries()) lemmas.push_back({surface, lemma});
  json vec = {{"variant", to_string(vectorizer_.variant())},
              {"vocabulary", vectorizer_.vocabulary().tokens()},
              {"term_weighting", encode(vectorizer_.term_weighting())},
              {"concept_weighting", encode(vectorizer_.concept_weighting())}};
  if (const auto& m = vectorizer_.matcher()) {
    json phrases = json::array();
    for (const auto& p : m->phrases()) phrases.push_back({{"concept", p.concept_ordinal}, {"tokens", p.tokens}});
    vec["n_concepts"] = m->n_concepts();
    vec["phrases"] = phrases;
  }
  return {{"format", "semannot-model"},
          {"version", kFormatVersion},
          {"field", to_string(field_)},
          {"lemmas", lemmas},
          {"vectorizer", vec},
          {"labels", labels_.ids()},
          {"classifier", classifier_->to_json()}};
}

Annotator Annotator::from_json(const json& j) {
  try {
    if (j.at("format").get<std::string>() != "semannot-model") throw Error("not a semannot model file");
    if (j.at("version").get<int>() != kFormatVersion) throw Error("unsupported model version");
    LemmaTable lemmas;
    for (const auto& pair : j.at("lemmas")) lemmas.add(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    const json& v = j.at("vectorizer");
    std::shared_ptr<const ConceptMatcher> matcher;
    if (v.contains("phrases")) {
      std::vector<ConceptPhrase> phrases;
      for (const auto& p : v.at("phrases")) {
        phrases.push_back({p.at("concept").get<std::size_t>(), p.at("tokens").get<TokenSequence>()});
      }
      matcher = std::make_shared<const ConceptMatcher>(std::move(phrases), v.at("n_concepts").get<std::size_t>());
    }
    Vectorizer vectorizer(parse_vectorization(v.at("variant").get<std::string>()),
                          Vocabulary(v.at("vocabulary").get<std::vector<std::string>>()),
                          decode_weighting(v.at("term_weighting")), matcher,
                          decode_weighting(v.at("concept_weighting")));
    return Annotator(parse_text_field(j.at("field").get<std::string>()), Preprocessor(std::move(lemmas)),
                     std::move(vectorizer), LabelSpace(j.at("labels").get<std::vector<ConceptId>>()),
                     classifier_from_json(j.at("classifier")));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
}

void Annotator::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json().dump() << '\n';
}

Annotator Annotator::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
  return from_json(j);
}

}  // namespace semannot
