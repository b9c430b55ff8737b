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

#ifndef SEMANNOT_LINEAR_HPP_
#define SEMANNOT_LINEAR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "semannot/labels.hpp"
#include "semannot/sparse.hpp"

namespace semannot {

enum class Loss { kLogistic, kHinge };

std::string_view to_string(Loss loss);

struct LinearConfig {
  Loss loss = Loss::kLogistic;
  double alpha = 1e-7;  // L2 regularization strength
  double eta0 = 1.0;    // initial learning rate; t0 = 1 / (alpha * eta0)
  // Step size multiplier for the (unregularized) bias.
  double bias_rate = 0.01;
  std::size_t epochs = 10;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

// Decision function w . x - b.
struct BinaryLinear {
  std::vector<double> w;
  double b = 0.0;

  double decision(const SparseVector& x) const { return dot(x, w) - b; }
};

// Called after every SGD step with the global step counter and the current
// (not averaged) iterate. Test hook; materializing the iterate costs O(dim).
using IterateObserver =
    std::function<void(std::size_t step, std::span<const double> w, double b)>;

// One seeded permutation of [0, n) per epoch, shared by every label model.
std::vector<std::vector<std::size_t>> presentation_orders(std::size_t n, std::size_t epochs,
                                                          std::uint64_t seed);

// Averaged SGD on one binary problem (targets +1 / -1) with learning rate
// eta(t) = 1 / (alpha * (t0 + t)). Averaging starts after the first epoch and
// the averaged iterate is returned.
BinaryLinear train_binary(std::span<const SparseVector> x, std::span<const std::int8_t> y,
                          const LinearConfig& config,
                          const std::vector<std::vector<std::size_t>>& orders,
                          const IterateObserver& observer = {});

// Binary-relevance linear classifier (SVM with hinge loss, LR with logistic loss).
class LinearModel {
 public:
  LinearModel(Loss loss, std::size_t dim, std::vector<BinaryLinear> per_label);

  static LinearModel fit(std::span<const SparseVector> x, const LabelMatrix& y,
                         const LinearConfig& config);

  std::vector<double> decisions(const SparseVector& x) const;
  // Labels with w . x - b > 0.
  LabelSet decide(const SparseVector& x) const;
  // Labels by confidence: logistic probability for LR, raw margin for SVM.
  Ranking rank(const SparseVector& x) const;

  Loss loss() const { return loss_; }
  std::size_t dim() const { return dim_; }
  std::size_t n_labels() const { return per_label_.size(); }
  const BinaryLinear& label_model(LabelIndex label) const { return per_label_[label]; }

 private:
  Loss loss_;
  std::size_t dim_;
  std::vector<BinaryLinear> per_label_;
};

double sigmoid(double z);

}  // namespace semannot

#endif  // SEMANNOT_LINEAR_HPP_
