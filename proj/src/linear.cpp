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

#include "semannot/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "semannot/error.hpp"
#include "semannot/parallel.hpp"

namespace semannot {
namespace {

// d loss / d p for a target y in {-1, +1}.
double loss_derivative(Loss loss, double p, double y) {
  if (loss == Loss::kHinge) return p * y < 1.0 ? -y : 0.0;
  return -y * sigmoid(-p * y);
}

// Averaged SGD state using Bottou's rescaling trick so that every step costs
// O(nnz(x)): w = v / w_div and avg = (u + u_frac * v) / avg_div.
class AveragedSgd {
 public:
  explicit AveragedSgd(std::size_t dim) : v_(dim, 0.0), u_(dim, 0.0) {}

  double decision(const SparseVector& x) const { return dot(x, v_) / w_div_ - b_; }

  void step(const SparseVector& x, double y, double eta, double alpha, double bias_rate,
            Loss loss, double mu) {
    if (w_div_ > 1e5 || avg_div_ > 1e5) renormalize();
    const double p = decision(x);
    w_div_ /= 1.0 - eta * alpha;
    const double g = loss_derivative(loss, p, y);
    if (g != 0.0) {
      const double delta = -eta * g * w_div_;
      for (std::size_t j = 0; j < x.nnz(); ++j) v_[x.index(j)] += delta * x.weight(j);
      if (averaging_) {
        for (std::size_t j = 0; j < x.nnz(); ++j) u_[x.index(j)] -= u_frac_ * delta * x.weight(j);
      }
      b_ += eta * bias_rate * g;
    }
    if (mu >= 1.0) {
      std::fill(u_.begin(), u_.end(), 0.0);
      avg_div_ = w_div_;
      u_frac_ = 1.0;
      avg_b_ = b_;
      averaging_ = true;
    } else if (mu > 0.0) {
      avg_div_ /= 1.0 - mu;
      u_frac_ += mu * avg_div_ / w_div_;
      avg_b_ += mu * (b_ - avg_b_);
    }
  }

  std::vector<double> weights() const {
    std::vector<double> w(v_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = v_[i] / w_div_;
    return w;
  }
  double bias() const { return b_; }

  BinaryLinear averaged() const {
    if (!averaging_) return {weights(), b_};
    BinaryLinear out;
    out.w.resize(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) out.w[i] = (u_[i] + u_frac_ * v_[i]) / avg_div_;
    out.b = avg_b_;
    return out;
  }

 private:
  void renormalize() {
    if (averaging_) {
      for (std::size_t i = 0; i < u_.size(); ++i) u_[i] = (u_[i] + u_frac_ * v_[i]) / avg_div_;
    }
    for (auto& w : v_) w /= w_div_;
    w_div_ = 1.0;
    avg_div_ = 1.0;
    u_frac_ = 0.0;
  }

  std::vector<double> v_;
  std::vector<double> u_;
  double w_div_ = 1.0;
  double avg_div_ = 1.0;
  double u_frac_ = 0.0;
  double b_ = 0.0;
  double avg_b_ = 0.0;
  bool averaging_ = false;
};

}  // namespace

std::string_view to_string(Loss loss) { return loss == Loss::kHinge ? "hinge" : "logistic"; }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<std::vector<std::size_t>> presentation_orders(std::size_t n, std::size_t epochs,
                                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::size_t>> orders;
  orders.reserve(epochs);
  for (std::size_t e = 0; e < epochs; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    orders.push_back(order);
  }
  return orders;
}

BinaryLinear train_binary(std::span<const SparseVector> x, std::span<const std::int8_t> y,
                          const LinearConfig& config,
                          const std::vector<std::vector<std::size_t>>& orders,
                          const IterateObserver& observer) {
  if (x.empty()) throw Error("linear: empty training set");
  if (x.size() != y.size()) throw Error("linear: targets do not align with vectors");
  if (config.alpha <= 0.0 || config.eta0 <= 0.0) {
    throw ConfigError("linear: alpha and eta0 must be positive");
  }
  const std::size_t dim = x.front().dim();
  const double t0 = 1.0 / (config.alpha * config.eta0);
  const std::size_t n = x.size();
  AveragedSgd sgd(dim);
  std::size_t t = 0;
  for (const auto& order : orders) {
    if (order.size() != n) throw Error("linear: presentation order has wrong length");
    for (const std::size_t i : order) {
      if (x[i].dim() != dim) throw Error("linear: dimension mismatch");
      const double eta = 1.0 / (config.alpha * (t0 + static_cast<double>(t)));
      // Uniform average over every iterate from the second epoch on.
      const double mu = t >= n ? 1.0 / static_cast<double>(t - n + 1) : 0.0;
      sgd.step(x[i], static_cast<double>(y[i]), eta, config.alpha, config.bias_rate, config.loss, mu);
      if (observer) observer(t, sgd.weights(), sgd.bias());
      ++t;
    }
  }
  return sgd.averaged();
}

LinearModel::LinearModel(Loss loss, std::size_t dim, std::vector<BinaryLinear> per_label)
    : loss_(loss), dim_(dim), per_label_(std::move(per_label)) {
  for (const auto& m : per_label_) {
    if (m.w.size() != dim_) throw Error("linear: weight vector size mismatch");
  }
}

LinearModel LinearModel::fit(std::span<const SparseVector> x, const LabelMatrix& y,
                             const LinearConfig& config) {
  if (x.empty()) throw Error("linear: empty training set");
  if (x.size() != y.n_docs()) throw Error("linear: labels do not align with vectors");
  const auto orders = presentation_orders(x.size(), config.epochs, config.seed);
  std::vector<BinaryLinear> models(y.n_labels);
  parallel_for(y.n_labels, config.jobs, [&](std::size_t l) {
    std::vector<std::int8_t> targets(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
      targets[d] = y.has(d, static_cast<LabelIndex>(l)) ? 1 : -1;
    }
    models[l] = train_binary(x, targets, config, orders);
  });
  return LinearModel(config.loss, x.front().dim(), std::move(models));
}

std::vector<double> LinearModel::decisions(const SparseVector& x) const {
  if (x.dim() != dim_) throw Error("linear: dimension mismatch");
  std::vector<double> out(per_label_.size());
  for (std::size_t l = 0; l < per_label_.size(); ++l) out[l] = per_label_[l].decision(x);
  return out;
}

LabelSet LinearModel::decide(const SparseVector& x) const {
  const auto d = decisions(x);
  LabelSet out;
  for (std::size_t l = 0; l < d.size(); ++l) {
    if (d[l] > 0.0) out.push_back(static_cast<LabelIndex>(l));
  }
  return out;
}

Ranking LinearModel::rank(const SparseVector& x) const {
  const auto d = decisions(x);
  Ranking ranking;
  ranking.reserve(d.size());
  for (std::size_t l = 0; l < d.size(); ++l) {
    const double score = loss_ == Loss::kLogistic ? sigmoid(d[l]) : d[l];
    ranking.push_back({static_cast<LabelIndex>(l), score});
  }
  sort_ranking(ranking);
  return ranking;
}

}  // namespace semannot
