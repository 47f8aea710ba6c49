// Copyright 2026 The ACSP Authors. All Rights Reserved.
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

#ifndef ACSP_TOYNET_HPP_
#define ACSP_TOYNET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acsp/tensio.hpp"

namespace acsp {

enum class LayerKind { kLinear, kConv, kReLU, kAvgPool, kFlatten };

struct Shape3 {
  std::size_t c = 0;
  std::size_t h = 1;
  std::size_t w = 1;

  std::size_t size() const { return c * h * w; }
  friend bool operator==(const Shape3&, const Shape3&) = default;
};

/// One layer of a strictly sequential network.
///
/// Linear: `in` -> `out` features, weight [out][in].
/// Conv:   `in` -> `out` channels, weight [out][in][kernel][kernel].
/// AvgPool: non-overlapping `pool` x `pool` windows.
/// The prunable components of a parametric layer are its `out` units.
struct Layer {
  LayerKind kind = LayerKind::kReLU;
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t kernel = 0;
  std::size_t stride = 1;
  std::size_t pad = 0;
  std::size_t pool = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  bool parametric() const { return kind == LayerKind::kLinear || kind == LayerKind::kConv; }
  /// Weights feeding one output unit (in for Linear, in*k*k for Conv).
  std::size_t fan_in() const { return kind == LayerKind::kConv ? in * kernel * kernel : in; }

  static Layer Linear(std::size_t in, std::size_t out);
  static Layer Conv(std::size_t in, std::size_t out, std::size_t kernel, std::size_t stride,
                    std::size_t pad);
  static Layer ReLU() { return Layer{}; }
  static Layer AvgPool(std::size_t size);
  static Layer Flatten();

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct TrainingMeta {
  std::uint64_t epochs = 0;
  double lr = 0.0;

  friend bool operator==(const TrainingMeta&, const TrainingMeta&) = default;
};

struct Model {
  Shape3 input;
  std::vector<Layer> layers;
  std::uint64_t seed = 0;
  TrainingMeta meta;

  friend bool operator==(const Model&, const Model&) = default;
};

// --- construction ----------------------------------------------------------

/// Parses an architecture string into a model with zero-initialized weights.
///
///   mlp:2-64-64-32-4
///   cnn:1x8x8-c8k3-p2-c16k3-p2-f-32-4
///
/// `c<out>k<k>[s<stride>][p<pad>]` is a convolution (stride 1, pad k/2 by
/// default), `p<n>` an average pool, `f` a flatten, and a bare integer a
/// linear layer. A ReLU follows every parametric layer except the last.
/// Throws ParseError whose message carries the byte offset.
Model ParseArch(std::string_view spec);

/// Seeded uniform init in [-1/sqrt(fan_in), 1/sqrt(fan_in)] for weights and
/// biases. Draws from the "init" sub-stream of `seed`.
void InitWeights(Model& model, std::uint64_t seed);

Model BuildModel(std::string_view spec, std::uint64_t seed);

/// Canonical architecture string of the current (possibly pruned) model.
std::string DescribeArch(const Model& model);

/// Output shape of every layer. Throws ShapeMismatch when layers do not
/// compose or the weight buffers have the wrong size.
std::vector<Shape3> LayerShapes(const Model& model);

/// Parametric layers excluding the output layer.
std::vector<std::size_t> PrunableLayers(const Model& model);

std::size_t NumClasses(const Model& model);

// --- inference -------------------------------------------------------------

/// Logits [n][C] for a dataset whose sample shape matches the model input.
/// Throws ShapeMismatch.
std::vector<double> Forward(const Model& model, const LabeledDataset& data);
double Accuracy(const Model& model, const LabeledDataset& data);
/// Mean softmax cross-entropy.
double Loss(const Model& model, const LabeledDataset& data);

/// Activations of a prunable layer over the dataset, shape [n][N][p][p].
/// Post-nonlinearity unless `pre_nonlinearity` is set.
/// Throws NotPrunableLayer, ShapeMismatch.
ActivationTensor CaptureActivations(const Model& model, const LabeledDataset& data,
                                    std::size_t layer_id, bool pre_nonlinearity = false);

// --- training --------------------------------------------------------------

struct LayerGradient {
  std::vector<double> weight;
  std::vector<double> bias;
};

/// Mean cross-entropy over `indices` and its gradient for every layer
/// (empty gradients for non-parametric layers).
double LossAndGradients(const Model& model, const LabeledDataset& data,
                        std::span<const std::size_t> indices, std::vector<LayerGradient>& grads);

struct EpochStats {
  std::size_t epoch = 0;
  double loss = 0.0;
  double accuracy = 0.0;
};

struct TrainOptions {
  std::size_t epochs = 50;
  double lr = 0.05;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  /// Layers with index < freeze_before receive no updates.
  std::size_t freeze_before = 0;
  /// Called with full-dataset stats for epoch 0 (before training) and after
  /// every epoch.
  std::function<void(const EpochStats&)> on_epoch;
};

/// Mini-batch SGD (momentum 0) on softmax cross-entropy. The per-epoch
/// sample order comes from the "train" sub-stream of options.seed.
/// Throws Divergence on a non-finite loss, BadParams on lr <= 0.
Model Train(const Model& model, const LabeledDataset& data, const TrainOptions& options);

/// ceil(fraction * n) indices, stratified by class, ascending. Per-class
/// quotas use largest remainders so the total is exact.
std::vector<std::size_t> StratifiedSubset(std::span<const std::uint32_t> labels, double fraction,
                                          std::uint64_t seed);

struct FinetuneOptions {
  double fraction = 0.25;
  std::size_t epochs = 2;
  double lr = 0.005;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  std::size_t freeze_before = 0;
};

/// Trains on a stratified random subset (the "finetune" sub-stream of seed).
Model Finetune(const Model& model, const LabeledDataset& data, const FinetuneOptions& options);

// --- surgery and accounting ------------------------------------------------

/// Removes every component not kept by the plan, together with the matching
/// input columns/channels of the next parametric layer. Indices refer to the
/// unpruned numbering of each layer. Throws MalformedPlan.
Model ApplyPrune(const Model& model, const PruningPlan& plan);

struct FlopsReport {
  std::vector<std::uint64_t> per_layer;
  std::uint64_t total = 0;
};

/// Multiply-accumulate x2 convention, biases excluded:
/// Linear 2*in*out, Conv 2*k*k*c_in*c_out*H_out*W_out, everything else 0.
FlopsReport CountFlops(const Model& model);

// --- persistence -----------------------------------------------------------

/// Model file: ACSP container header with kind Model, then input shape,
/// training metadata and each layer's hyper-parameters followed by its f64
/// weights and biases (little-endian).
std::string EncodeModel(const Model& model);
Model DecodeModel(std::string bytes);
void WriteModel(const Model& model, const std::filesystem::path& path);
Model ReadModel(const std::filesystem::path& path);

}  // namespace acsp

#endif  // ACSP_TOYNET_HPP_
