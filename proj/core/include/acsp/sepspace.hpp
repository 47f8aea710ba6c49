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

#ifndef ACSP_SEPSPACE_HPP_
#define ACSP_SEPSPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "acsp/tensio.hpp"

namespace acsp {

/// Floor applied to every variance before the Bhattacharyya distance.
inline constexpr double kVarianceFloor = 1e-12;

/// Gaussian summary of one component's activations for one class.
struct ClassStats {
  double mean = 0.0;
  double variance = 0.0;
};

/// Mean and population variance (divide by n), variance floored.
ClassStats ComputeClassStats(std::span<const double> values);

/// Bhattacharyya distance between two univariate Gaussians:
///
///   B = (mu_a - mu_b)^2 / (8 (var_a + var_b))
///     + 1/2 ln((var_a + var_b) / (2 sigma_a sigma_b))
///
/// Variances are floored first. Symmetric and >= 0.
double Bhattacharyya(const ClassStats& a, const ClassStats& b);

/// Jeffries-Matusita distance 2 (1 - exp(-B)), kept strictly below 2.
double JmFromBhattacharyya(double b);
double JmDistance(const ClassStats& a, const ClassStats& b);

/// Canonical class pairs (c, c') with c < c', lexicographic.
std::vector<std::pair<std::uint32_t, std::uint32_t>> ClassPairs(std::size_t num_classes);

/// Graph space of one layer: one row per component, one column per
/// (class pair, pixel); column = pair_index * pixels + pixel, pixels are
/// row-major within the p x p map.
struct SeparabilityMatrix {
  std::uint64_t layer_id = 0;
  std::size_t rows = 0;
  std::size_t pixels = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_order;
  std::vector<double> values;  // rows x cols, row-major

  std::size_t cols() const { return pair_order.size() * pixels; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols(), cols()}; }
};

/// Per-component, per-pixel JM separability for every class pair.
/// Throws ClassTooSmall if any class in [0, C) has fewer than two samples,
/// NonFiniteValue if an activation is NaN/Inf.
SeparabilityMatrix BuildSpace(const ActivationTensor& act);

/// Dumps the matrix as a container of kind Separability with dims
/// [rows, pairs, p, p] (values narrowed to f32).
void WriteSpace(const SeparabilityMatrix& space, const std::filesystem::path& path);
SeparabilityMatrix ReadSpace(const std::filesystem::path& path);

}  // namespace acsp

#endif  // ACSP_SEPSPACE_HPP_
