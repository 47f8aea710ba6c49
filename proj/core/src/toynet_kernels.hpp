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

#ifndef ACSP_SRC_TOYNET_KERNELS_HPP_
#define ACSP_SRC_TOYNET_KERNELS_HPP_

#include <span>
#include <vector>

#include "acsp/toynet.hpp"

namespace acsp::kernels {

/// y = layer(x) for a single sample.
void Forward(const Layer& layer, const Shape3& in, std::span<const double> x, const Shape3& out,
             std::span<double> y);

/// Given dL/dy, writes dL/dx into dx and accumulates parameter gradients.
void Backward(const Layer& layer, const Shape3& in, std::span<const double> x, const Shape3& out,
              std::span<const double> dy, std::span<double> dx, LayerGradient& grad);

/// Per-sample activations: trace[0] is the input, trace[i + 1] the output of
/// layer i.
void ForwardTrace(const Model& model, const std::vector<Shape3>& shapes,
                  std::span<const float> sample, std::vector<std::vector<double>>& trace);

/// log-sum-exp(logits) - logits[label], and optionally softmax - onehot.
double CrossEntropy(std::span<const double> logits, std::size_t label,
                    std::span<double> dlogits = {});

}  // namespace acsp::kernels

#endif  // ACSP_SRC_TOYNET_KERNELS_HPP_
