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

#include "acsp/sepspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acsp/error.hpp"
#include "acsp/parallel.hpp"

namespace acsp {

ClassStats ComputeClassStats(std::span<const double> values) {
  ClassStats s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.variance = std::max(sq / static_cast<double>(values.size()), kVarianceFloor);
  return s;
}

double Bhattacharyya(const ClassStats& a, const ClassStats& b) {
  const double va = std::max(a.variance, kVarianceFloor);
  const double vb = std::max(b.variance, kVarianceFloor);
  const double sum = va + vb;
  const double gap = a.mean - b.mean;
  const double mean_term = 0.125 * gap * gap / sum;
  // Equal variances make the log term exactly zero.
  const double var_term =
      va == vb ? 0.0 : std::max(0.0, 0.5 * std::log(sum / (2.0 * std::sqrt(va) * std::sqrt(vb))));
  return mean_term + var_term;
}

double JmFromBhattacharyya(double b) {
  const double jm = -2.0 * std::expm1(-b);
  // 1 - exp(-B) rounds to 1 once B exceeds ~37; the true value is below 2.
  return std::min(jm, std::nextafter(2.0, 0.0));
}

double JmDistance(const ClassStats& a, const ClassStats& b) {
  return JmFromBhattacharyya(Bhattacharyya(a, b));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> ClassPairs(std::size_t num_classes) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t c = 0; c < num_classes; ++c) {
    for (std::uint32_t d = c + 1; d < num_classes; ++d) pairs.emplace_back(c, d);
  }
  return pairs;
}

SeparabilityMatrix BuildSpace(const ActivationTensor& act) {
  if (act.values.size() != act.num_samples * act.components * act.pixels() ||
      act.labels.size() != act.num_samples) {
    throw Error(ErrorCode::kShapeMismatch, "activation tensor buffers do not match its shape");
  }
  std::size_t classes = 0;
  for (auto l : act.labels) classes = std::max<std::size_t>(classes, l + 1);
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < act.num_samples; ++i) members[act.labels[i]].push_back(i);
  for (std::size_t c = 0; c < classes; ++c) {
    if (members[c].size() < 2) {
      throw Error(ErrorCode::kClassTooSmall,
                  "class " + std::to_string(c) + " has " + std::to_string(members[c].size()) +
                      " samples; at least 2 are needed");
    }
  }
  for (float v : act.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteValue, "activation is NaN/Inf");
  }

  SeparabilityMatrix space;
  space.layer_id = act.layer_id;
  space.rows = act.components;
  space.pixels = act.pixels();
  space.pair_order = ClassPairs(classes);
  const std::size_t cols = space.cols();
  space.values.assign(space.rows * cols, 0.0);

  ParallelFor(act.components, [&](std::size_t j) {
    std::vector<ClassStats> stats(classes);
    std::vector<double> buffer;
    for (std::size_t px = 0; px < space.pixels; ++px) {
      for (std::size_t c = 0; c < classes; ++c) {
        buffer.clear();
        for (auto i : members[c]) buffer.push_back(act.at(i, j, px));
        // Fixed summation order keeps the row bit-identical under sample shuffles.
        std::sort(buffer.begin(), buffer.end());
        stats[c] = ComputeClassStats(buffer);
      }
      for (std::size_t p = 0; p < space.pair_order.size(); ++p) {
        const auto [a, b] = space.pair_order[p];
        space.values[j * cols + p * space.pixels + px] = JmDistance(stats[a], stats[b]);
      }
    }
  });
  return space;
}

void WriteSpace(const SeparabilityMatrix& space, const std::filesystem::path& path) {
  Container c;
  c.kind = ContainerKind::kSeparability;
  c.layer_id = space.layer_id;
  std::size_t side = 1;
  while (side * side < space.pixels) ++side;
  c.dims = {space.rows, space.pair_order.size(), side, side};
  c.values.assign(space.values.begin(), space.values.end());
  WriteContainer(c, path);
}

SeparabilityMatrix ReadSpace(const std::filesystem::path& path) {
  Container c = ReadContainer(path);
  if (c.kind != ContainerKind::kSeparability || c.dims.size() != 4 || c.dims[2] != c.dims[3]) {
    throw Error(ErrorCode::kMalformedFile, path.string() + " is not a separability container");
  }
  // C(C, 2) = pairs determines C.
  std::size_t classes = 2;
  while (classes * (classes - 1) / 2 < c.dims[1]) ++classes;
  if (classes * (classes - 1) / 2 != c.dims[1]) {
    throw Error(ErrorCode::kMalformedFile, "pair count is not a binomial coefficient");
  }
  SeparabilityMatrix space;
  space.layer_id = c.layer_id;
  space.rows = c.dims[0];
  space.pixels = c.dims[2] * c.dims[3];
  space.pair_order = ClassPairs(classes);
  space.values.assign(c.values.begin(), c.values.end());
  return space;
}

}  // namespace acsp
