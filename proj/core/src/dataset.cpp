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

#include "acsp/dataset.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "acsp/error.hpp"
#include "acsp/rng.hpp"

namespace acsp {

DataKind ParseDataKind(std::string_view name) {
  if (name == "blobs") return DataKind::kBlobs;
  if (name == "rings") return DataKind::kRings;
  throw Error(ErrorCode::kBadParams, "unknown data kind '" + std::string(name) + "'");
}

std::vector<std::size_t> ParseShape(std::string_view text) {
  std::vector<std::size_t> shape;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('x', pos), text.size());
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end || value == 0) {
      throw Error(ErrorCode::kBadParams, "bad shape '" + std::string(text) + "'");
    }
    shape.push_back(value);
    pos = end + 1;
  }
  return shape;
}

LabeledDataset GenerateDataset(const DataGenOptions& options) {
  const std::size_t classes = options.classes;
  if (classes < 2) throw Error(ErrorCode::kBadParams, "need at least two classes");
  if (options.n < 2 * classes) throw Error(ErrorCode::kBadParams, "need n >= 2C samples");
  if (options.shape.empty()) throw Error(ErrorCode::kBadParams, "empty sample shape");
  if (!(options.noise >= 0.0)) throw Error(ErrorCode::kBadParams, "noise must be >= 0");

  LabeledDataset data;
  data.sample_shape = options.shape;
  const std::size_t dims = data.sample_size();
  if (dims == 0) throw Error(ErrorCode::kBadParams, "empty sample shape");
  if (options.kind == DataKind::kRings && dims < 2) {
    throw Error(ErrorCode::kBadParams, "rings need at least two coordinates");
  }

  Rng rng = Rng::Stream(options.seed, "data");
  std::vector<double> centers(classes * dims, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / classes;
    double* center = &centers[c * dims];
    if (dims == 1) {
      center[0] = 4.0 * static_cast<double>(c);
    } else {
      center[0] = 4.0 * std::cos(angle);
      center[1] = 4.0 * std::sin(angle);
    }
    for (std::size_t d = 2; d < dims; ++d) center[d] = rng.Uniform(-2.0, 2.0);
  }

  data.samples.resize(options.n * dims);
  data.labels.resize(options.n);
  for (std::size_t i = 0; i < options.n; ++i) {
    const auto label = static_cast<std::uint32_t>(i % classes);
    data.labels[i] = label;
    float* x = &data.samples[i * dims];
    if (options.kind == DataKind::kBlobs) {
      for (std::size_t d = 0; d < dims; ++d) {
        x[d] = static_cast<float>(centers[label * dims + d] + options.noise * rng.Normal());
      }
    } else {
      const double radius = 1.0 + 1.5 * label + 0.15 * options.noise * rng.Normal();
      const double theta = rng.Uniform(0.0, 2.0 * std::numbers::pi);
      x[0] = static_cast<float>(radius * std::cos(theta));
      x[1] = static_cast<float>(radius * std::sin(theta));
      for (std::size_t d = 2; d < dims; ++d) x[d] = static_cast<float>(options.noise * rng.Normal());
    }
  }
  return data;
}

}  // namespace acsp
