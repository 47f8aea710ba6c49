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

#ifndef ACSP_TENSIO_HPP_
#define ACSP_TENSIO_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace acsp {

// ---------------------------------------------------------------------------
// Binary container
//
//   "ACSP"            4 bytes magic
//   version           u32 (kFormatVersion)
//   kind              u32 (ContainerKind)
//   layer_id          u64
//   ndims             u32, then ndims x u64
//   label_count       u64, then label_count x u32
//   values            prod(dims) x f32, row-major
//
// All integers and reals are little-endian. Model files share the magic,
// version and kind words but carry their own payload (see toynet.hpp).
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kFormatVersion = 1;

enum class ContainerKind : std::uint32_t {
  kDataset = 0,
  kLinearActivations = 1,
  kConvActivations = 2,
  kSeparability = 3,
  kModel = 4,
};

struct Container {
  ContainerKind kind = ContainerKind::kDataset;
  std::uint64_t layer_id = 0;
  std::vector<std::uint64_t> dims;
  std::vector<std::uint32_t> labels;
  std::vector<float> values;

  friend bool operator==(const Container&, const Container&) = default;
};

/// Encodes a container. Throws NonFiniteValue on NaN/Inf and MalformedFile
/// when values.size() != prod(dims).
std::string EncodeContainer(const Container& c);
/// Decodes and validates. Errors: BadMagic, VersionMismatch, TruncatedFile,
/// NonFiniteValue, MalformedFile (trailing bytes, unknown kind).
Container DecodeContainer(std::string bytes);

void WriteContainer(const Container& c, const std::filesystem::path& path);
Container ReadContainer(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

struct LabeledDataset {
  std::vector<std::size_t> sample_shape;  // {d} for vectors, {c, h, w} for images
  std::vector<float> samples;             // row-major [sample][...]
  std::vector<std::uint32_t> labels;

  std::size_t size() const { return labels.size(); }
  std::size_t sample_size() const;
  /// 1 + the largest label (0 when empty).
  std::size_t num_classes() const;
  std::span<const float> sample(std::size_t i) const {
    return {samples.data() + i * sample_size(), sample_size()};
  }

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/// Throws InvalidDataset unless n > 0, the sample buffer matches the shape,
/// and every class id in [0, C) appears at least twice.
void ValidateDataset(const LabeledDataset& data);

/// Subset in the given index order.
LabeledDataset SelectSamples(const LabeledDataset& data, std::span<const std::size_t> indices);

void WriteDataset(const LabeledDataset& data, const std::filesystem::path& path);
LabeledDataset ReadDataset(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Activations
// ---------------------------------------------------------------------------

enum class ActivationKind { kLinear, kConv };

/// Activation maps of one layer for a labeled batch, shape
/// [num_samples][components][side][side]; side is 1 for linear layers.
struct ActivationTensor {
  std::uint64_t layer_id = 0;
  ActivationKind kind = ActivationKind::kLinear;
  std::size_t num_samples = 0;
  std::size_t components = 0;
  std::size_t side = 1;
  std::vector<float> values;
  std::vector<std::uint32_t> labels;

  std::size_t pixels() const { return side * side; }
  float at(std::size_t sample, std::size_t component, std::size_t pixel) const {
    return values[(sample * components + component) * pixels() + pixel];
  }

  friend bool operator==(const ActivationTensor&, const ActivationTensor&) = default;
};

void WriteActivations(const ActivationTensor& act, const std::filesystem::path& path);
ActivationTensor ReadActivations(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Pruning plans (JSON text)
// ---------------------------------------------------------------------------

enum class SelectionMode { kRegular, kWeighted };

std::string_view SelectionModeName(SelectionMode mode);
/// Accepts "regular" / "weighted"; throws BadParams otherwise.
SelectionMode ParseSelectionMode(std::string_view name);

struct PlanEntry {
  std::uint64_t layer_id = 0;
  std::size_t num_components = 0;         // N_i of the layer before pruning
  std::vector<std::size_t> kept_indices;  // strictly increasing, < num_components
  std::size_t k_selected = 0;
  std::string mss_curve_ref;
  SelectionMode selection_mode = SelectionMode::kWeighted;
  int knee_degree = 2;
  std::optional<std::size_t> knee_k;  // nullopt: no knee was found
  std::vector<double> knee_coefficients;

  friend bool operator==(const PlanEntry&, const PlanEntry&) = default;
};

struct PruningPlan {
  std::vector<PlanEntry> layers;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const PruningPlan&, const PruningPlan&) = default;
};

/// Throws MalformedPlan when any entry breaks the index invariants or a
/// layer appears twice.
void ValidatePlan(const PruningPlan& plan);

std::string PlanToJson(const PruningPlan& plan);
PruningPlan PlanFromJson(const std::string& text);
void WritePlan(const PruningPlan& plan, const std::filesystem::path& path);
PruningPlan ReadPlan(const std::filesystem::path& path);

}  // namespace acsp

#endif  // ACSP_TENSIO_HPP_
