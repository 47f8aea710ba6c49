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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "acsp/error.hpp"
#include "acsp/rng.hpp"
#include "acsp/toynet.hpp"
#include "toynet_kernels.hpp"

namespace acsp {

double LossAndGradients(const Model& model, const LabeledDataset& data,
                        std::span<const std::size_t> indices, std::vector<LayerGradient>& grads) {
  const auto shapes = LayerShapes(model);
  const std::size_t classes = shapes.empty() ? model.input.size() : shapes.back().size();
  grads.resize(model.layers.size());
  for (std::size_t i = 0; i < model.layers.size(); ++i) {
    grads[i].weight.assign(model.layers[i].weight.size(), 0.0);
    grads[i].bias.assign(model.layers[i].bias.size(), 0.0);
  }
  if (indices.empty()) return 0.0;

  std::vector<std::vector<double>> trace;
  std::vector<double> upstream(classes);
  std::vector<double> downstream;
  double total = 0.0;
  for (auto idx : indices) {
    if (data.labels[idx] >= classes) throw Error(ErrorCode::kShapeMismatch, "label >= model classes");
    kernels::ForwardTrace(model, shapes, data.sample(idx), trace);
    upstream.resize(classes);
    total += kernels::CrossEntropy(trace.back(), data.labels[idx], upstream);
    for (std::size_t li = model.layers.size(); li-- > 0;) {
      const Shape3 in = li == 0 ? model.input : shapes[li - 1];
      downstream.resize(in.size());
      kernels::Backward(model.layers[li], in, trace[li], shapes[li], upstream, downstream,
                        grads[li]);
      std::swap(upstream, downstream);
    }
  }
  const double scale = 1.0 / static_cast<double>(indices.size());
  for (auto& g : grads) {
    for (auto& w : g.weight) w *= scale;
    for (auto& b : g.bias) b *= scale;
  }
  return total * scale;
}

Model Train(const Model& model, const LabeledDataset& data, const TrainOptions& options) {
  if (!(options.lr > 0.0) || !std::isfinite(options.lr)) {
    throw Error(ErrorCode::kBadParams, "learning rate must be positive");
  }
  if (options.batch_size == 0) throw Error(ErrorCode::kBadParams, "batch size must be positive");
  Model out = model;
  auto report = [&](std::size_t epoch) {
    if (!options.on_epoch) return;
    const double loss = Loss(out, data);
    options.on_epoch({epoch, loss, Accuracy(out, data)});
  };
  report(0);
  if (options.epochs == 0) return out;

  Rng rng = Rng::Stream(options.seed, "train");
  std::vector<std::size_t> order(data.size());
  std::vector<LayerGradient> grads;
  for (std::size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.Shuffle(std::span(order));
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t len = std::min(options.batch_size, order.size() - start);
      const double loss = LossAndGradients(out, data, {order.data() + start, len}, grads);
      if (!std::isfinite(loss)) {
        throw Error(ErrorCode::kDivergence,
                    "non-finite loss in epoch " + std::to_string(epoch) + "; lower the lr");
      }
      for (std::size_t li = options.freeze_before; li < out.layers.size(); ++li) {
        Layer& layer = out.layers[li];
        for (std::size_t k = 0; k < layer.weight.size(); ++k) {
          layer.weight[k] -= options.lr * grads[li].weight[k];
        }
        for (std::size_t k = 0; k < layer.bias.size(); ++k) {
          layer.bias[k] -= options.lr * grads[li].bias[k];
        }
      }
    }
    if (options.on_epoch) {
      report(epoch);
    }
  }
  const double final_loss = Loss(out, data);
  if (!std::isfinite(final_loss)) {
    throw Error(ErrorCode::kDivergence, "non-finite loss after training; lower the lr");
  }
  out.meta.epochs += options.epochs;
  out.meta.lr = options.lr;
  return out;
}

std::vector<std::size_t> StratifiedSubset(std::span<const std::uint32_t> labels, double fraction,
                                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kBadParams, "fine-tune fraction must be in (0, 1]");
  }
  const std::size_t n = labels.size();
  const auto total = std::min(n, static_cast<std::size_t>(std::ceil(fraction * n - 1e-9)));
  std::size_t classes = 0;
  for (auto l : labels) classes = std::max<std::size_t>(classes, l + 1);
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < n; ++i) members[labels[i]].push_back(i);

  // Largest-remainder apportionment of `total` across classes.
  std::vector<std::size_t> quota(classes);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < classes; ++c) {
    const double exact = static_cast<double>(total) * members[c].size() / static_cast<double>(n);
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; i = (i + 1) % classes) {
    const std::size_t c = remainders[i].second;
    if (quota[c] < members[c].size()) {
      ++quota[c];
      ++assigned;
    }
  }

  Rng rng = Rng::Stream(seed, "finetune-subset");
  std::vector<std::size_t> picked;
  picked.reserve(total);
  for (std::size_t c = 0; c < classes; ++c) {
    rng.Shuffle(std::span(members[c]));
    picked.insert(picked.end(), members[c].begin(), members[c].begin() + quota[c]);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

Model Finetune(const Model& model, const LabeledDataset& data, const FinetuneOptions& options) {
  const auto subset = StratifiedSubset(data.labels, options.fraction, options.seed);
  TrainOptions train;
  train.epochs = options.epochs;
  train.lr = options.lr;
  train.batch_size = options.batch_size;
  train.seed = options.seed;
  train.freeze_before = options.freeze_before;
  Model tuned = subset.size() == data.size() ? Train(model, data, train)
                                             : Train(model, SelectSamples(data, subset), train);
  // Fine-tuning does not count as training history.
  tuned.meta = model.meta;
  return tuned;
}

}  // namespace acsp
