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

#ifndef ACSP_DATASET_HPP_
#define ACSP_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "acsp/tensio.hpp"

namespace acsp {

enum class DataKind { kBlobs, kRings };

DataKind ParseDataKind(std::string_view name);

struct DataGenOptions {
  DataKind kind = DataKind::kBlobs;
  std::size_t n = 2000;
  std::size_t classes = 4;
  std::vector<std::size_t> shape = {2};
  std::uint64_t seed = 1;
  double noise = 1.0;
};

/// Synthetic labeled data. Sample i has label i mod C, so class counts are
/// balanced within one.
///
/// blobs: one isotropic Gaussian per class. The first two coordinates of the
///        class centers sit on a circle of radius 4; the remaining coordinates
///        get a seeded offset in [-2, 2]. Per-coordinate std is `noise`.
/// rings: concentric annuli of radius 1 + 1.5c in the first two coordinates
///        with radial jitter 0.15 * noise; other coordinates are N(0, noise).
///
/// Throws BadParams when C < 2, n < 2C, the shape is empty, or rings are
/// requested with fewer than two coordinates.
LabeledDataset GenerateDataset(const DataGenOptions& options);

/// Parses "2" or "1x8x8" into a shape. Throws BadParams.
std::vector<std::size_t> ParseShape(std::string_view text);

}  // namespace acsp

#endif  // ACSP_DATASET_HPP_
