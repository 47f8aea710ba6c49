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

#ifndef ACSP_CLUSTER_HPP_
#define ACSP_CLUSTER_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acsp/sepspace.hpp"

namespace acsp {

/// Dense symmetric pairwise Euclidean distances between rows.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  static DistanceMatrix FromRows(std::span<const double> values, std::size_t rows, std::size_t cols);
  static DistanceMatrix FromSpace(const SeparabilityMatrix& space);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

struct ClusterResult {
  std::size_t k = 0;
  std::vector<std::size_t> medoids;     // sorted row indices
  std::vector<std::size_t> assignment;  // row -> its medoid's row index
  double total_cost = 0.0;
  /// Cost after BUILD, then after every accepted swap (strictly decreasing),
  /// for the run that produced the medoids.
  std::vector<double> cost_history;
};

/// Assigns every point to a nearest medoid (lowest index on ties); medoids
/// are assigned to themselves. `medoids` need not be sorted.
ClusterResult AssignToMedoids(const DistanceMatrix& dist, std::vector<std::size_t> medoids);

struct KMedoidsOptions {
  std::size_t max_iters = 100;
  /// Extra BUILD+SWAP runs seeded with the next most central points; the
  /// cheapest run wins. 0 is classic single-start PAM.
  std::size_t restarts = 7;
};

/// PAM: greedy BUILD followed by best-improvement SWAP passes until no swap
/// lowers the cost or max_iters is reached, repeated from `restarts` further
/// seeds. Fully deterministic; ties go to the lowest index and the earliest
/// run. Throws BadK unless 2 <= k <= N (k = 1 is allowed only
/// when N = 1).
ClusterResult KMedoids(const DistanceMatrix& dist, std::size_t k,
                       const KMedoidsOptions& options = {});

inline constexpr double kSilhouetteFloor = 1e-12;

/// Mean simplified silhouette: for each point, a = distance to its medoid,
/// b = mean distance to the other k - 1 medoids, score = 1 - a / max(b, eps).
/// Throws BadK when k < 2.
double MeanSimplifiedSilhouette(const DistanceMatrix& dist, const ClusterResult& result);
std::vector<double> SimplifiedSilhouetteScores(const DistanceMatrix& dist,
                                               const ClusterResult& result);

struct MssCurve {
  std::uint64_t layer_id = 0;
  std::map<std::size_t, double> entries;  // k -> MSS
};

struct SweepOptions {
  std::size_t k_min = 2;
  std::size_t k_max = 0;  // 0 means N
  std::size_t stride = 1;
  KMedoidsOptions kmedoids;
};

/// k-Medoids + MSS for k = k_min, k_min + stride, ..., plus k_max itself.
/// Each k is independent and may run on its own worker.
/// Throws BadRange unless 2 <= k_min <= k_max <= N and stride >= 1.
MssCurve Sweep(const DistanceMatrix& dist, const SweepOptions& options, std::uint64_t layer_id = 0);

/// "k,mss" header plus one row per swept k.
std::string MssCurveCsv(const MssCurve& curve);

}  // namespace acsp

#endif  // ACSP_CLUSTER_HPP_
