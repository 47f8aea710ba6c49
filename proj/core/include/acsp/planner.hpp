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

#ifndef ACSP_PLANNER_HPP_
#define ACSP_PLANNER_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acsp/cluster.hpp"
#include "acsp/knee.hpp"
#include "acsp/tensio.hpp"
#include "acsp/toynet.hpp"

namespace acsp {

struct PruneConfig {
  int degree = 2;
  SelectionMode mode = SelectionMode::kWeighted;
  std::size_t stride = 1;
  double ft_fraction = 0.25;
  std::size_t ft_epochs = 2;
  /// Defaults to 0.1 x the model's recorded training lr (0.005 if unknown).
  std::optional<double> ft_lr;
  std::size_t batch_size = 32;
  std::uint64_t seed = 1;
  bool pre_nonlinearity = false;
  /// Fine-tune only the pruned layer and everything after it.
  bool freeze_upstream = false;
  std::size_t max_iters = 100;
  std::size_t pam_restarts = 7;
  /// Invoked with the current model right before a layer's activations are
  /// captured.
  std::function<void(const Model&, std::size_t layer_id)> on_capture;
};

double EffectiveFinetuneLr(const PruneConfig& config, const Model& model);

/// Every field of the config as key/value strings (for reports and plans).
std::map<std::string, std::string> DescribeConfig(const PruneConfig& config, const Model& model);

struct LayerReport {
  std::size_t layer_id = 0;
  std::size_t num_components = 0;
  std::size_t k_selected = 0;
  std::vector<std::size_t> kept_indices;
  MssCurve mss_curve;
  std::optional<KneeResult> knee;
  std::uint64_t flops_before = 0;  // whole-model totals around this step
  std::uint64_t flops_after = 0;
  SelectionMode selection_mode = SelectionMode::kWeighted;
  std::vector<std::string> warnings;
};

/// L2 norm of component j's incoming weights (bias excluded).
double ComponentNorm(const Model& model, std::size_t layer_id, std::size_t j);
std::vector<double> ComponentNorms(const Model& model, std::size_t layer_id);

/// Regular: the medoids. Weighted: the largest-norm member of every cluster
/// (lowest index on ties). Sorted, exactly k indices.
std::vector<std::size_t> Compose(const ClusterResult& result, SelectionMode mode,
                                 std::span<const double> norms);

struct LayerOutcome {
  Model model;
  LayerReport report;
};

/// One iteration of the layer loop: capture, separability space, k sweep,
/// knee, composition, surgery, fine-tune. Degenerate layers (too few
/// samples per class, too few components or sweep points, no knee) keep
/// every component, are not fine-tuned and carry a warning.
LayerOutcome PruneLayer(const Model& model, const LabeledDataset& data, std::size_t layer_id,
                        const PruneConfig& config);

struct PruneOutcome {
  Model model;
  std::vector<LayerReport> reports;
  std::uint64_t flops_before = 0;
  std::uint64_t flops_after = 0;
  double speedup = 1.0;
};

/// Applies PruneLayer to every prunable layer in forward order; each layer
/// sees the already pruned and fine-tuned model.
PruneOutcome PruneModel(const Model& model, const LabeledDataset& data, const PruneConfig& config);

/// Plan equivalent of the reports (replayable with ApplyPrune on the
/// original model).
PruningPlan MakePlan(std::span<const LayerReport> reports, int degree,
                     std::map<std::string, std::string> metadata);

}  // namespace acsp

#endif  // ACSP_PLANNER_HPP_
