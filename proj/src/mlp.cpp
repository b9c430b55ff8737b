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

#include "semannot/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "semannot/error.hpp"
#include "semannot/linear.hpp"

namespace semannot {

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  throw ConfigError("unknown activation '" + std::string(name) + "' (valid: relu, tanh)");
}

std::string_view to_string(Activation a) { return a == Activation::kRelu ? "relu" : "tanh"; }

MlpParameters MlpParameters::zeros(std::size_t inputs, std::size_t hidden, std::size_t outputs) {
  MlpParameters p;
  p.inputs = inputs;
  p.hidden = hidden;
  p.outputs = outputs;
  p.w1.assign(inputs * hidden, 0.0);
  p.b1.assign(hidden, 0.0);
  p.w2.assign(outputs * hidden, 0.0);
  p.b2.assign(outputs, 0.0);
  return p;
}

std::vector<std::vector<double>*> MlpParameters::blocks() { return {&w1, &b1, &w2, &b2}; }

std::vector<const std::vector<double>*> MlpParameters::blocks() const {
  return {&w1, &b1, &w2, &b2};
}

MlpModel::MlpModel(MlpParameters params, Activation activation, double threshold)
    : params_(std::move(params)), activation_(activation), threshold_(threshold) {
  const auto& p = params_;
  if (p.w1.size() != p.inputs * p.hidden || p.b1.size() != p.hidden ||
      p.w2.size() != p.outputs * p.hidden || p.b2.size() != p.outputs) {
    throw Error("mlp: parameter shapes do not match dimensions");
  }
}

MlpModel MlpModel::initialize(std::size_t inputs, std::size_t outputs, const MlpConfig& config) {
  if (config.hidden == 0) throw ConfigError("mlp: hidden size must be positive");
  auto params = MlpParameters::zeros(inputs, config.hidden, outputs);
  std::mt19937_64 rng(config.seed);
  auto glorot = [&rng](std::vector<double>& w, std::size_t fan_in, std::size_t fan_out) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (auto& v : w) v = dist(rng);
  };
  glorot(params.w1, inputs, config.hidden);
  glorot(params.w2, config.hidden, outputs);
  return MlpModel(std::move(params), config.activation, config.threshold);
}

double MlpModel::activate(double z) const {
  return activation_ == Activation::kRelu ? std::max(0.0, z) : std::tanh(z);
}

double MlpModel::activate_derivative(double z) const {
  if (activation_ == Activation::kRelu) return z > 0.0 ? 1.0 : 0.0;
  const double t = std::tanh(z);
  return 1.0 - t * t;
}

void MlpModel::hidden_pre_activation(const SparseVector& x, std::span<double> z) const {
  const std::size_t h = params_.hidden;
  if (x.dim() != params_.inputs) throw Error("mlp: input dimension mismatch");
  std::copy(params_.b1.begin(), params_.b1.end(), z.begin());
  for (std::size_t i = 0; i < x.nnz(); ++i) {
    const double xv = x.weight(i);
    const double* row = params_.w1.data() + static_cast<std::size_t>(x.index(i)) * h;
    for (std::size_t j = 0; j < h; ++j) z[j] += xv * row[j];
  }
}

std::vector<double> MlpModel::scores(const SparseVector& x) const {
  const std::size_t h = params_.hidden;
  std::vector<double> hidden(h);
  hidden_pre_activation(x, hidden);
  for (auto& v : hidden) v = activate(v);
  std::vector<double> out(params_.outputs);
  for (std::size_t k = 0; k < params_.outputs; ++k) {
    const double* row = params_.w2.data() + k * h;
    double y = params_.b2[k];
    for (std::size_t j = 0; j < h; ++j) y += row[j] * hidden[j];
    out[k] = sigmoid(y);
  }
  return out;
}

LabelSet MlpModel::decide(const SparseVector& x) const {
  const auto s = scores(x);
  LabelSet out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] > threshold_) out.push_back(static_cast<LabelIndex>(k));
  }
  return out;
}

Ranking MlpModel::rank(const SparseVector& x) const {
  const auto s = scores(x);
  Ranking ranking;
  ranking.reserve(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) ranking.push_back({static_cast<LabelIndex>(k), s[k]});
  sort_ranking(ranking);
  return ranking;
}

double MlpModel::loss_and_gradient(std::span<const SparseVector> x, std::span<const LabelSet> y,
                                   MlpParameters* grad, const DropoutMasks* masks) const {
  if (x.size() != y.size()) throw Error("mlp: targets do not align with inputs");
  if (masks != nullptr && masks->size() != x.size()) throw Error("mlp: one dropout mask per sample");
  const std::size_t h = params_.hidden;
  const std::size_t out = params_.outputs;
  if (grad != nullptr) {
    for (auto* block : grad->blocks()) std::fill(block->begin(), block->end(), 0.0);
  }
  const double scale = x.empty() ? 0.0 : 1.0 / static_cast<double>(x.size());
  std::vector<double> z1(h), hidden(h), dhidden(h), target(out), dy(out);
  double total = 0.0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    hidden_pre_activation(x[s], z1);
    for (std::size_t j = 0; j < h; ++j) {
      hidden[j] = activate(z1[j]);
      if (masks != nullptr) hidden[j] *= (*masks)[s][j];
    }
    std::fill(target.begin(), target.end(), 0.0);
    for (const auto l : y[s]) target.at(l) = 1.0;
    for (std::size_t k = 0; k < out; ++k) {
      const double* row = params_.w2.data() + k * h;
      double logit = params_.b2[k];
      for (std::size_t j = 0; j < h; ++j) logit += row[j] * hidden[j];
      // Numerically stable binary cross-entropy with logits.
      total += std::max(logit, 0.0) - logit * target[k] + std::log1p(std::exp(-std::abs(logit)));
      dy[k] = (sigmoid(logit) - target[k]) * scale;
    }
    if (grad == nullptr) continue;
    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (std::size_t k = 0; k < out; ++k) {
      if (dy[k] == 0.0) continue;
      const double* row = params_.w2.data() + k * h;
      double* grow = grad->w2.data() + k * h;
      for (std::size_t j = 0; j < h; ++j) {
        grow[j] += dy[k] * hidden[j];
        dhidden[j] += dy[k] * row[j];
      }
      grad->b2[k] += dy[k];
    }
    for (std::size_t j = 0; j < h; ++j) {
      if (masks != nullptr) dhidden[j] *= (*masks)[s][j];
      dhidden[j] *= activate_derivative(z1[j]);
      grad->b1[j] += dhidden[j];
    }
    for (std::size_t i = 0; i < x[s].nnz(); ++i) {
      const double xv = x[s].weight(i);
      double* grow = grad->w1.data() + static_cast<std::size_t>(x[s].index(i)) * h;
      for (std::size_t j = 0; j < h; ++j) grow[j] += xv * dhidden[j];
    }
  }
  return total * scale;
}

MlpModel MlpModel::fit(std::span<const SparseVector> x, const LabelMatrix& y,
                       const MlpConfig& config) {
  if (x.empty()) throw Error("mlp: empty training set");
  if (x.size() != y.n_docs()) throw Error("mlp: labels do not align with vectors");
  if (config.batch_size == 0) throw ConfigError("mlp: batch size must be positive");
  if (config.dropout < 0.0 || config.dropout >= 1.0) {
    throw ConfigError("mlp: dropout must be in [0, 1)");
  }
  MlpModel model = initialize(x.front().dim(), y.n_labels, config);
  const std::size_t h = config.hidden;
  auto grad = MlpParameters::zeros(model.params_.inputs, h, model.params_.outputs);
  auto first = MlpParameters::zeros(model.params_.inputs, h, model.params_.outputs);
  auto second = MlpParameters::zeros(model.params_.inputs, h, model.params_.outputs);

  // Dropout and shuffling draw from a stream separate from initialization.
  std::mt19937_64 rng(config.seed ^ 0x9E3779B97F4A7C15ULL);
  std::bernoulli_distribution keep(1.0 - config.dropout);
  const double keep_scale = 1.0 / (1.0 - config.dropout);

  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<SparseVector> batch_x;
  std::vector<LabelSet> batch_y;
  DropoutMasks masks;
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch_x.clear();
      batch_y.clear();
      masks.assign(end - start, std::vector<double>(h, 1.0));
      for (std::size_t i = start; i < end; ++i) {
        batch_x.push_back(x[order[i]]);
        batch_y.push_back(y.rows[order[i]]);
      }
      if (config.dropout > 0.0) {
        for (auto& m : masks) {
          for (auto& v : m) v = keep(rng) ? keep_scale : 0.0;
        }
      }
      const double loss = model.loss_and_gradient(batch_x, batch_y, &grad,
                                                  config.dropout > 0.0 ? &masks : nullptr);
      if (!std::isfinite(loss)) {
        std::ostringstream msg;
        msg << "mlp: non-finite loss at epoch " << epoch << ", batch starting at " << start
            << " (try --mlp-activation tanh or a smaller learning rate)";
        throw Error(msg.str());
      }
      epoch_loss += loss * static_cast<double>(end - start);

      ++step;
      const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
      auto params = model.params_.blocks();
      auto grads = grad.blocks();
      auto m1 = first.blocks();
      auto m2 = second.blocks();
      for (std::size_t b = 0; b < params.size(); ++b) {
        auto& p = *params[b];
        const auto& g = *grads[b];
        auto& m = *m1[b];
        auto& v = *m2[b];
        for (std::size_t i = 0; i < p.size(); ++i) {
          m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * g[i];
          v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * g[i] * g[i];
          p[i] -= config.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + config.epsilon);
        }
      }
    }
    model.epoch_losses_.push_back(epoch_loss / static_cast<double>(x.size()));
  }
  return model;
}

}  // namespace semannot
