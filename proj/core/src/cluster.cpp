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

#include "acsp/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "acsp/error.hpp"
#include "acsp/parallel.hpp"

namespace acsp {

DistanceMatrix DistanceMatrix::FromRows(std::span<const double> values, std::size_t rows,
                                        std::size_t cols) {
  DistanceMatrix m;
  m.n_ = rows;
  m.d_.assign(rows * rows, 0.0);
  ParallelFor(rows, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < rows; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        const double diff = values[i * cols + c] - values[j * cols + c];
        sq += diff * diff;
      }
      // Row i owns the upper triangle entries (i, j > i) and mirrors them.
      m.d_[i * rows + j] = std::sqrt(sq);
    }
  });
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < rows; ++j) m.d_[j * rows + i] = m.d_[i * rows + j];
  }
  return m;
}

DistanceMatrix DistanceMatrix::FromSpace(const SeparabilityMatrix& space) {
  return FromRows(space.values, space.rows, space.cols());
}

ClusterResult AssignToMedoids(const DistanceMatrix& dist, std::vector<std::size_t> medoids) {
  std::sort(medoids.begin(), medoids.end());
  ClusterResult r;
  r.k = medoids.size();
  r.assignment.resize(dist.size());
  std::vector<bool> is_medoid(dist.size(), false);
  for (auto m : medoids) is_medoid[m] = true;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (is_medoid[i]) {
      r.assignment[i] = i;
      continue;
    }
    std::size_t best = medoids.front();
    for (auto m : medoids) {
      if (dist(i, m) < dist(i, best)) best = m;
    }
    r.assignment[i] = best;
    r.total_cost += dist(i, best);
  }
  r.medoids = std::move(medoids);
  return r;
}

namespace {

// Nearest and second-nearest medoid distances for every point.
struct NearestCache {
  std::vector<std::size_t> nearest;
  std::vector<double> d1;
  std::vector<double> d2;

  void Rebuild(const DistanceMatrix& dist, const std::vector<std::size_t>& medoids) {
    const std::size_t n = dist.size();
    nearest.assign(n, 0);
    d1.assign(n, std::numeric_limits<double>::infinity());
    d2.assign(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
      for (auto m : medoids) {
        const double d = dist(i, m);
        if (d < d1[i]) {
          d2[i] = d1[i];
          d1[i] = d;
          nearest[i] = m;
        } else if (d < d2[i]) {
          d2[i] = d;
        }
      }
    }
  }

  double Cost() const { return std::accumulate(d1.begin(), d1.end(), 0.0); }
};

struct PamRun {
  std::vector<std::size_t> medoids;
  std::vector<double> history;
};

// BUILD seeded with `first`, then greedily the point that lowers the total
// cost the most; then SWAP with the best improving exchange per pass.
PamRun RunPam(const DistanceMatrix& dist, std::size_t k, std::size_t first,
              std::size_t max_iters) {
  const std::size_t n = dist.size();
  std::vector<std::size_t> medoids{first};
  std::vector<bool> is_medoid(n, false);
  is_medoid[first] = true;
  std::vector<double> d1(n);
  for (std::size_t j = 0; j < n; ++j) d1[j] = dist(j, first);
  while (medoids.size() < k) {
    std::size_t pick = n;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) gain += std::max(d1[j] - dist(i, j), 0.0);
      if (gain > best_gain) {
        best_gain = gain;
        pick = i;
      }
    }
    medoids.push_back(pick);
    is_medoid[pick] = true;
    for (std::size_t j = 0; j < n; ++j) d1[j] = std::min(d1[j], dist(j, pick));
  }

  NearestCache cache;
  cache.Rebuild(dist, medoids);
  double cost = cache.Cost();
  std::vector<double> history{cost};
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    double best_delta = 0.0;
    std::size_t best_slot = 0;
    std::size_t best_candidate = n;
    std::vector<std::size_t> order(medoids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return medoids[a] < medoids[b]; });
    for (std::size_t slot : order) {
      const std::size_t m = medoids[slot];
      for (std::size_t o = 0; o < n; ++o) {
        if (is_medoid[o]) continue;
        double delta = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
          const double keep = cache.nearest[p] == m ? cache.d2[p] : cache.d1[p];
          delta += std::min(keep, dist(p, o)) - cache.d1[p];
        }
        if (delta < best_delta) {
          best_delta = delta;
          best_slot = slot;
          best_candidate = o;
        }
      }
    }
    const double tolerance = 1e-12 * std::max(1.0, cost);
    if (best_candidate == n || best_delta >= -tolerance) break;
    is_medoid[medoids[best_slot]] = false;
    is_medoid[best_candidate] = true;
    medoids[best_slot] = best_candidate;
    cache.Rebuild(dist, medoids);
    const double next = cache.Cost();
    if (!(next < cost)) break;
    cost = next;
    history.push_back(cost);
  }
  return {std::move(medoids), std::move(history)};
}

}  // namespace

ClusterResult KMedoids(const DistanceMatrix& dist, std::size_t k, const KMedoidsOptions& options) {
  const std::size_t n = dist.size();
  if (k > n || k == 0 || (k < 2 && n > 1)) {
    throw Error(ErrorCode::kBadK,
                "k = " + std::to_string(k) + " outside [2, " + std::to_string(n) + "]");
  }

  // Starting points in order of centrality; the first is classic BUILD.
  std::vector<double> spread(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) spread[i] += dist(i, j);
  }
  std::vector<std::size_t> starts(n);
  std::iota(starts.begin(), starts.end(), std::size_t{0});
  std::stable_sort(starts.begin(), starts.end(),
                   [&](std::size_t a, std::size_t b) { return spread[a] < spread[b]; });
  starts.resize(std::min(n, options.restarts + 1));

  PamRun best = RunPam(dist, k, starts[0], options.max_iters);
  for (std::size_t s = 1; s < starts.size(); ++s) {
    PamRun run = RunPam(dist, k, starts[s], options.max_iters);
    const double cost = best.history.back();
    if (run.history.back() < cost - 1e-12 * std::max(1.0, cost)) best = std::move(run);
  }

  ClusterResult result = AssignToMedoids(dist, best.medoids);
  result.cost_history = std::move(best.history);
  return result;
}

std::vector<double> SimplifiedSilhouetteScores(const DistanceMatrix& dist,
                                               const ClusterResult& result) {
  if (result.k < 2 || result.medoids.size() != result.k) {
    throw Error(ErrorCode::kBadK, "simplified silhouette needs at least two medoids");
  }
  std::vector<double> scores(dist.size());
  const double others = static_cast<double>(result.k - 1);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const std::size_t own = result.assignment[i];
    const double a = dist(i, own);
    double b = 0.0;
    for (auto m : result.medoids) {
      if (m != own) b += dist(i, m);
    }
    b /= others;
    scores[i] = 1.0 - a / std::max(b, kSilhouetteFloor);
  }
  return scores;
}

double MeanSimplifiedSilhouette(const DistanceMatrix& dist, const ClusterResult& result) {
  const auto scores = SimplifiedSilhouetteScores(dist, result);
  if (scores.empty()) return 1.0;
  return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
}

MssCurve Sweep(const DistanceMatrix& dist, const SweepOptions& options, std::uint64_t layer_id) {
  const std::size_t n = dist.size();
  const std::size_t k_max = options.k_max == 0 ? n : options.k_max;
  if (options.k_min < 2 || options.k_min > k_max || k_max > n || options.stride == 0) {
    throw Error(ErrorCode::kBadRange, "sweep range [" + std::to_string(options.k_min) + ", " +
                                          std::to_string(k_max) + "] invalid for N = " +
                                          std::to_string(n));
  }
  std::vector<std::size_t> ks;
  for (std::size_t k = options.k_min; k <= k_max; k += options.stride) ks.push_back(k);
  if (ks.back() != k_max) ks.push_back(k_max);

  std::vector<double> scores(ks.size());
  ParallelFor(ks.size(), [&](std::size_t i) {
    scores[i] = MeanSimplifiedSilhouette(dist, KMedoids(dist, ks[i], options.kmedoids));
  });

  MssCurve curve;
  curve.layer_id = layer_id;
  for (std::size_t i = 0; i < ks.size(); ++i) curve.entries.emplace(ks[i], scores[i]);
  return curve;
}

std::string MssCurveCsv(const MssCurve& curve) {
  std::string out = "k,mss\n";
  char line[64];
  for (const auto& [k, mss] : curve.entries) {
    std::snprintf(line, sizeof(line), "%zu,%.12f\n", k, mss);
    out += line;
  }
  return out;
}

}  // namespace acsp
