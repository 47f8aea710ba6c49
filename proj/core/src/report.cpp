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

#include "acsp/report.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace acsp {
namespace {

template <typename... Args>
std::string Format(const char* fmt, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

}  // namespace

std::string FormatSummary(const SummaryInfo& info) {
  std::string out = "# acsp prune summary\n";
  out += "# arch_before=" + info.arch_before + "\n";
  out += "# arch_after=" + info.arch_after + "\n";
  for (const auto& [key, value] : info.config) out += "# " + key + "=" + value + "\n";
  out += "# FLOPs: 2 x multiply-accumulates of linear/conv layers, biases excluded\n";
  out += Format("%-6s %6s %6s %14s %14s %8s  %s\n", "layer", "N_i", "k'", "flops_before",
                "flops_after", "speedup", "note");
  for (const auto& r : info.layers) {
    std::string note = r.warnings.empty() ? "-" : r.warnings.front();
    const double step = r.flops_after == 0 ? 1.0
                                           : static_cast<double>(r.flops_before) /
                                                 static_cast<double>(r.flops_after);
    out += Format("%-6zu %6zu %6zu %14llu %14llu %8.4f  ", r.layer_id, r.num_components,
                  r.k_selected, static_cast<unsigned long long>(r.flops_before),
                  static_cast<unsigned long long>(r.flops_after), step);
    out += note + "\n";
  }
  const double speedup = info.flops_after == 0 ? 1.0
                                               : static_cast<double>(info.flops_before) /
                                                     static_cast<double>(info.flops_after);
  out += Format("base_accuracy=%.6f\n", info.base_accuracy);
  out += Format("pruned_accuracy=%.6f\n", info.pruned_accuracy);
  out += Format("delta_acc=%+.2f\n", 100.0 * (info.pruned_accuracy - info.base_accuracy));
  out += Format("flops_before=%llu\n", static_cast<unsigned long long>(info.flops_before));
  out += Format("flops_after=%llu\n", static_cast<unsigned long long>(info.flops_after));
  out += Format("remaining_flops_pct=%.2f\n",
                info.flops_before == 0 ? 100.0
                                       : 100.0 * static_cast<double>(info.flops_after) /
                                             static_cast<double>(info.flops_before));
  out += Format("speedup=%.4f\n", speedup);
  return out;
}

std::string MssCurveSvg(const MssCurve& curve, const std::optional<KneeResult>& knee) {
  constexpr double kWidth = 480, kHeight = 320, kMargin = 40;
  std::string out = Format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\">\n", kWidth,
      kHeight);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (curve.entries.empty()) return out + "</svg>\n";

  const double k_lo = static_cast<double>(curve.entries.begin()->first);
  const double k_hi = static_cast<double>(curve.entries.rbegin()->first);
  double y_lo = curve.entries.begin()->second, y_hi = y_lo;
  for (const auto& [k, v] : curve.entries) {
    y_lo = std::min(y_lo, v);
    y_hi = std::max(y_hi, v);
  }
  if (y_hi - y_lo < 1e-12) y_hi = y_lo + 1.0;
  auto px = [&](double k) {
    return kMargin + (k_hi > k_lo ? (k - k_lo) / (k_hi - k_lo) : 0.5) * (kWidth - 2 * kMargin);
  };
  auto py = [&](double v) {
    return kHeight - kMargin - (v - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  };

  out += Format("<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n",
                kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin);
  out += Format("<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" stroke=\"black\"/>\n",
                kMargin, kMargin, kMargin, kHeight - kMargin);
  out += Format("<text x=\"%.0f\" y=\"%.0f\" font-size=\"12\">k</text>\n", kWidth / 2,
                kHeight - 10);
  out += Format("<text x=\"5\" y=\"%.0f\" font-size=\"12\">MSS</text>\n", kMargin - 10);
  out += Format("<text x=\"%.0f\" y=\"%.0f\" font-size=\"10\">%zu</text>\n", kMargin,
                kHeight - kMargin + 14, curve.entries.begin()->first);
  out += Format("<text x=\"%.0f\" y=\"%.0f\" font-size=\"10\">%zu</text>\n", kWidth - kMargin,
                kHeight - kMargin + 14, curve.entries.rbegin()->first);

  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& [k, v] : curve.entries) out += Format("%.2f,%.2f ", px(k), py(v));
  out += "\"/>\n";

  if (knee && knee->k_prime) {
    const auto it = curve.entries.find(*knee->k_prime);
    if (it != curve.entries.end()) {
      const double x = px(static_cast<double>(it->first));
      out += Format(
          "<line x1=\"%.2f\" y1=\"%.0f\" x2=\"%.2f\" y2=\"%.0f\" stroke=\"crimson\" "
          "stroke-dasharray=\"4\"/>\n",
          x, kMargin, x, kHeight - kMargin);
      out += Format("<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"crimson\"/>\n", x,
                    py(it->second));
      out += Format("<text x=\"%.2f\" y=\"%.0f\" font-size=\"12\" fill=\"crimson\">k'=%zu</text>\n",
                    x + 4, kMargin + 12, it->first);
    }
  }
  return out + "</svg>\n";
}

}  // namespace acsp
