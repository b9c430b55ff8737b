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

#ifndef SEMANNOT_MLP_HPP_
#define SEMANNOT_MLP_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "semannot/labels.hpp"
#include "semannot/sparse.hpp"

namespace semannot {

enum class Activation { kRelu, kTanh };

Activation parse_activation(std::string_view name);
std::string_view to_string(Activation a);

struct MlpConfig {
  std::size_t hidden = 1000;
  Activation activation = Activation::kRelu;
  double dropout = 0.5;
  double threshold = 0.2;
  // Adam
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t epochs = 20;
  std::size_t batch_size = 256;
  std::uint64_t seed = 0;
};

// Weights of a one-hidden-layer network. w1 is stored input-major
// (w1[f * hidden + j]) so a sparse input touches contiguous rows; w2 is
// output-major (w2[k * hidden + j]).
struct MlpParameters {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::size_t outputs = 0;
  std::vector<double> w1, b1, w2, b2;

  static MlpParameters zeros(std::size_t inputs, std::size_t hidden, std::size_t outputs);

  // The four blocks in a fixed order (w1, b1, w2, b2).
  std::vector<std::vector<double>*> blocks();
  std::vector<const std::vector<double>*> blocks() const;
};

// Hidden-unit keep masks, one row of `hidden` scale factors per sample
// (0 or 1 / (1 - p) for inverted dropout).
using DropoutMasks = std::vector<std::vector<double>>;

class MlpModel {
 public:
  MlpModel(MlpParameters params, Activation activation, double threshold);

  // Glorot-uniform weights and zero biases.
  static MlpModel initialize(std::size_t inputs, std::size_t outputs, const MlpConfig& config);

  // Adam on summed per-label binary cross-entropy (mean over the mini-batch),
  // with inverted dropout on the hidden layer. Throws on a non-finite loss.
  static MlpModel fit(std::span<const SparseVector> x, const LabelMatrix& y,
                      const MlpConfig& config);

  // Sigmoid outputs, dropout disabled.
  std::vector<double> scores(const SparseVector& x) const;
  // Labels whose probability is strictly above the threshold.
  LabelSet decide(const SparseVector& x) const;
  Ranking rank(const SparseVector& x) const;

  // Mean loss over the batch and its gradient (accumulated into `grad`, which
  // is reset first). Masks, when given, hold one row per sample.
  double loss_and_gradient(std::span<const SparseVector> x, std::span<const LabelSet> y,
                           MlpParameters* grad, const DropoutMasks* masks = nullptr) const;

  const MlpParameters& parameters() const { return params_; }
  MlpParameters& mutable_parameters() { return params_; }
  Activation activation() const { return activation_; }
  double threshold() const { return threshold_; }
  // Mean training loss per epoch, filled by fit().
  const std::vector<double>& epoch_losses() const { return epoch_losses_; }

 private:
  void hidden_pre_activation(const SparseVector& x, std::span<double> z) const;
  double activate(double z) const;
  double activate_derivative(double z) const;

  MlpParameters params_;
  Activation activation_;
  double threshold_;
  std::vector<double> epoch_losses_;
};

}  // namespace semannot

#endif  // SEMANNOT_MLP_HPP_
