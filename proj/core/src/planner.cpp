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

#include "acsp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "acsp/error.hpp"
#include "acsp/rng.hpp"
#include "acsp/sepspace.hpp"

namespace acsp {
namespace {

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string CurveRef(std::size_t layer_id) {
  return "mss_layer" + std::to_string(layer_id) + ".csv";
}

}  // namespace

double EffectiveFinetuneLr(const PruneConfig& config, const Model& model) {
  if (config.ft_lr) return *config.ft_lr;
  return model.meta.lr > 0.0 ? 0.1 * model.meta.lr : 0.005;
}

std::map<std::string, std::string> DescribeConfig(const PruneConfig& config, const Model& model) {
  return {
      {"degree", std::to_string(config.degree)},
      {"selection", std::string(SelectionModeName(config.mode))},
      {"stride", std::to_string(config.stride)},
      {"ft_fraction", FormatDouble(config.ft_fraction)},
      {"ft_epochs", std::to_string(config.ft_epochs)},
      {"ft_lr", FormatDouble(EffectiveFinetuneLr(config, model))},
      {"batch_size", std::to_string(config.batch_size)},
      {"seed", std::to_string(config.seed)},
      {"capture", config.pre_nonlinearity ? "pre" : "post"},
      {"freeze_upstream", config.freeze_upstream ? "true" : "false"},
      {"max_iters", std::to_string(config.max_iters)},
      {"pam_restarts", std::to_string(config.pam_restarts)},
  };
}

double ComponentNorm(const Model& model, std::size_t layer_id, std::size_t j) {
  const Layer& layer = model.layers.at(layer_id);
  if (!layer.parametric() || j >= layer.out) {
    throw Error(ErrorCode::kBadParams, "component " + std::to_string(j) + " of layer " +
                                           std::to_string(layer_id) + " does not exist");
  }
  const std::size_t row = layer.fan_in();
  double sq = 0.0;
  for (std::size_t i = 0; i < row; ++i) sq += layer.weight[j * row + i] * layer.weight[j * row + i];
  return std::sqrt(sq);
}

std::vector<double> ComponentNorms(const Model& model, std::size_t layer_id) {
  std::vector<double> norms(model.layers.at(layer_id).out);
  for (std::size_t j = 0; j < norms.size(); ++j) norms[j] = ComponentNorm(model, layer_id, j);
  return norms;
}

std::vector<std::size_t> Compose(const ClusterResult& result, SelectionMode mode,
                                 std::span<const double> norms) {
  if (mode == SelectionMode::kRegular) return result.medoids;
  if (norms.size() != result.assignment.size()) {
    throw Error(ErrorCode::kBadParams, "one norm per component is required");
  }
  std::vector<std::size_t> kept;
  kept.reserve(result.k);
  for (auto medoid : result.medoids) {
    std::size_t best = medoid;
    for (std::size_t i = 0; i < result.assignment.size(); ++i) {
      if (result.assignment[i] != medoid) continue;
      if (norms[i] > norms[best] || (norms[i] == norms[best] && i < best)) best = i;
    }
    kept.push_back(best);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

LayerOutcome PruneLayer(const Model& model, const LabeledDataset& data, std::size_t layer_id,
                        const PruneConfig& config) {
  const auto prunable = PrunableLayers(model);
  if (std::find(prunable.begin(), prunable.end(), layer_id) == prunable.end()) {
    throw Error(ErrorCode::kNotPrunableLayer,
                "layer " + std::to_string(layer_id) + " is not a prunable layer");
  }

  LayerOutcome outcome{model, {}};
  LayerReport& report = outcome.report;
  report.layer_id = layer_id;
  report.num_components = model.layers[layer_id].out;
  report.selection_mode = config.mode;
  report.flops_before = CountFlops(model).total;
  report.mss_curve.layer_id = layer_id;

  const std::size_t n = report.num_components;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto keep_all = [&](std::string warning) {
    report.k_selected = n;
    report.kept_indices = all;
    report.flops_after = report.flops_before;
    if (!warning.empty()) report.warnings.push_back(std::move(warning));
    return outcome;
  };

  if (config.on_capture) config.on_capture(model, layer_id);
  if (n < 3) return keep_all("layer has fewer than 3 components; kept all");

  DistanceMatrix dist;
  try {
    const ActivationTensor act =
        CaptureActivations(model, data, layer_id, config.pre_nonlinearity);
    dist = DistanceMatrix::FromSpace(BuildSpace(act));
    SweepOptions sweep;
    sweep.stride = config.stride;
    sweep.kmedoids.max_iters = config.max_iters;
    sweep.kmedoids.restarts = config.pam_restarts;
    report.mss_curve = Sweep(dist, sweep, layer_id);
    report.knee = FindKnee(report.mss_curve, KneeOptions{config.degree, 1.0});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kClassTooSmall && e.code() != ErrorCode::kTooFewPoints) throw;
    return keep_all(std::string(ErrorCodeName(e.code())) + ": " + e.what() + "; kept all");
  }

  if (!report.knee->k_prime) return keep_all("no knee in MSS curve; kept all");
  const std::size_t k = *report.knee->k_prime;
  if (k >= n) return keep_all("");

  const ClusterResult clusters = KMedoids(dist, k, KMedoidsOptions{config.max_iters, config.pam_restarts});
  report.kept_indices = Compose(clusters, config.mode, ComponentNorms(model, layer_id));
  report.k_selected = report.kept_indices.size();

  PruningPlan plan;
  plan.layers = MakePlan(std::span(&report, 1), config.degree, {}).layers;
  Model pruned = ApplyPrune(model, plan);

  FinetuneOptions ft;
  ft.fraction = config.ft_fraction;
  ft.epochs = config.ft_epochs;
  ft.lr = EffectiveFinetuneLr(config, model);
  ft.batch_size = config.batch_size;
  ft.seed = Rng::Stream(config.seed, "finetune-layer-" + std::to_string(layer_id)).NextU64();
  ft.freeze_before = config.freeze_upstream ? layer_id : 0;
  if (ft.epochs > 0) pruned = Finetune(pruned, data, ft);

  outcome.model = std::move(pruned);
  report.flops_after = CountFlops(outcome.model).total;
  return outcome;
}

PruneOutcome PruneModel(const Model& model, const LabeledDataset& data, const PruneConfig& config) {
  PruneOutcome out;
  out.model = model;
  out.flops_before = CountFlops(model).total;
  // The fine-tune lr is pinned from the input model so later layers do not
  // compound the 0.1 factor.
  PruneConfig pinned = config;
  pinned.ft_lr = EffectiveFinetuneLr(config, model);
  for (std::size_t layer_id : PrunableLayers(model)) {
    LayerOutcome step = PruneLayer(out.model, data, layer_id, pinned);
    out.model = std::move(step.model);
    out.reports.push_back(std::move(step.report));
  }
  out.flops_after = CountFlops(out.model).total;
  out.speedup = out.flops_after == 0 ? 1.0
                                     : static_cast<double>(out.flops_before) /
                                           static_cast<double>(out.flops_after);
  return out;
}

PruningPlan MakePlan(std::span<const LayerReport> reports, int degree,
                     std::map<std::string, std::string> metadata) {
  PruningPlan plan;
  plan.metadata = std::move(metadata);
  for (const auto& r : reports) {
    PlanEntry e;
    e.layer_id = r.layer_id;
    e.num_components = r.num_components;
    e.kept_indices = r.kept_indices;
    e.k_selected = r.k_selected;
    e.mss_curve_ref = r.mss_curve.entries.empty() ? "" : CurveRef(r.layer_id);
    e.selection_mode = r.selection_mode;
    e.knee_degree = degree;
    if (r.knee) {
      e.knee_k = r.knee->k_prime;
      e.knee_coefficients = r.knee->fitted_coeffs;
    }
    plan.layers.push_back(std::move(e));
  }
  return plan;
}

}  // namespace acsp
