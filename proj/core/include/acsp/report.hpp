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

#ifndef ACSP_REPORT_HPP_
#define ACSP_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "acsp/planner.hpp"

namespace acsp {

struct SummaryInfo {
  std::map<std::string, std::string> config;
  std::string arch_before;
  std::string arch_after;
  std::span<const LayerReport> layers;
  double base_accuracy = 0.0;
  double pruned_accuracy = 0.0;
  std::uint64_t flops_before = 0;
  std::uint64_t flops_after = 0;
};

/// Plain-text summary: echoed config, a per-layer table (layer, N_i, k',
/// FLOPs before/after) and the base/pruned accuracy, accuracy delta in
/// points, and speed-up lines as `key=value`.
std::string FormatSummary(const SummaryInfo& info);

/// Minimal standalone SVG line chart of an MSS curve, knee marked if any.
std::string MssCurveSvg(const MssCurve& curve, const std::optional<KneeResult>& knee);

}  // namespace acsp

#endif  // ACSP_REPORT_HPP_
