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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numeric>

#include "acsp/error.hpp"
#include "acsp/rng.hpp"
#include "oracles.hpp"

namespace acsp {
namespace {

ActivationTensor RandomTensor(Rng& rng, std::size_t per_class, std::size_t classes,
                              std::size_t components, std::size_t side) {
  ActivationTensor act;
  act.kind = side == 1 ? ActivationKind::kLinear : ActivationKind::kConv;
  act.num_samples = per_class * classes;
  act.components = components;
  act.side = side;
  for (std::size_t i = 0; i < act.num_samples; ++i) {
    act.labels.push_back(static_cast<std::uint32_t>(i % classes));
  }
  act.values.resize(act.num_samples * components * side * side);
  for (auto& v : act.values) v = static_cast<float>(rng.Normal() * 2.0 + 0.5);
  return act;
}

TEST(Bhattacharyya, Examples) {
  EXPECT_EQ(Bhattacharyya({1.5, 2.0}, {1.5, 2.0}), 0.0);
  EXPECT_NEAR(Bhattacharyya({0, 1}, {2, 1}), 0.25, 1e-15);
  EXPECT_NEAR(Bhattacharyya({0, 1}, {0, 4}), 0.11157177565710488, 1e-15);
}

TEST(Jm, Examples) {
  EXPECT_EQ(JmFromBhattacharyya(0.0), 0.0);
  EXPECT_NEAR(JmDistance({0, 1}, {2, 1}), 0.44239843385719024, 1e-15);
  EXPECT_NEAR(JmDistance({0, 1}, {10, 1}), 1.9961390917275446, 1e-15);
  EXPECT_LT(JmFromBhattacharyya(1e6), 2.0);
}

TEST(Jm, MatchesLongDoubleOracle) {
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    const ClassStats a{rng.Uniform(-5, 5), std::exp(rng.Uniform(-6, 3))};
    const ClassStats b{rng.Uniform(-5, 5), std::exp(rng.Uniform(-6, 3))};
    const long double want =
        oracle::Jm(oracle::Bhattacharyya(a.mean, a.variance, b.mean, b.variance));
    const double got = JmDistance(a, b);
    EXPECT_LE(std::fabs(got - want), 1e-10 * std::max(1.0L, std::fabs(want)));
    EXPECT_GE(got, 0.0);
    EXPECT_LT(got, 2.0);
    EXPECT_EQ(got, JmDistance(b, a));
  }
}

TEST(Jm, MonotoneInB) {
  double prev = -1;
  for (double b = 0; b < 40; b += 0.37) {
    const double jm = JmFromBhattacharyya(b);
    EXPECT_GE(jm, prev);
    prev = jm;
  }
}

TEST(ClassStats, PopulationVarianceAndFloor) {
  const double two[] = {1.0, 3.0};
  const ClassStats s = ComputeClassStats(two);
  EXPECT_DOUBLE_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.variance, 1.0);
  const double same[] = {4.0, 4.0, 4.0};
  EXPECT_EQ(JmDistance(ComputeClassStats(same), ComputeClassStats(same)), 0.0);
  EXPECT_TRUE(std::isfinite(Bhattacharyya({0, 0}, {1, 0})));
}

TEST(ClassPairs, Lexicographic) {
  using P = std::pair<std::uint32_t, std::uint32_t>;
  EXPECT_EQ(ClassPairs(3), (std::vector<P>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(ClassPairs(4).size(), 6u);
}

TEST(BuildSpace, TwoClassLinearSingleColumn) {
  ActivationTensor act;
  act.num_samples = 4;
  act.components = 2;
  act.values = {0, 5, 1, 5, 2, 5, 4, 5};
  act.labels = {0, 0, 1, 1};
  const SeparabilityMatrix s = BuildSpace(act);
  ASSERT_EQ(s.cols(), 1u);
  // component 0: class 0 {0, 1} -> (0.5, 0.25); class 1 {2, 4} -> (3, 1)
  EXPECT_DOUBLE_EQ(s.at(0, 0), JmDistance({0.5, 0.25}, {3, 1}));
  EXPECT_EQ(s.at(1, 0), 0.0);  // constant component
}

TEST(BuildSpace, ThreeClassConvShapeAndOracle) {
  Rng rng(3);
  const ActivationTensor act = RandomTensor(rng, 3, 3, 4, 2);
  const SeparabilityMatrix s = BuildSpace(act);
  EXPECT_EQ(s.rows, 4u);
  EXPECT_EQ(s.cols(), 12u);
  const auto want = oracle::Space(act);
  ASSERT_EQ(want.size(), s.values.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s.values[i], want[i], 1e-9);
}

TEST(BuildSpace, Invariances) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ActivationTensor act = RandomTensor(rng, 4, 3, 3, 2);
    const SeparabilityMatrix base = BuildSpace(act);
    for (double v : base.values) {
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 2.0);
    }

    // Sample permutation.
    std::vector<std::size_t> perm(act.num_samples);
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span(perm));
    ActivationTensor shuffled = act;
    const std::size_t stride = act.components * act.pixels();
    for (std::size_t i = 0; i < perm.size(); ++i) {
      shuffled.labels[i] = act.labels[perm[i]];
      std::copy_n(act.values.begin() + perm[i] * stride, stride, shuffled.values.begin() + i * stride);
    }
    const SeparabilityMatrix s2 = BuildSpace(shuffled);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
      EXPECT_EQ(s2.values[i], base.values[i]);
    }

    // Swapping two class labels permutes pair columns but keeps values.
    ActivationTensor swapped = act;
    for (auto& l : swapped.labels) l = l == 0 ? 2 : (l == 2 ? 0 : l);
    const SeparabilityMatrix s3 = BuildSpace(swapped);
    // pairs (0,1),(0,2),(1,2) become (2,1),(2,0),(1,0) = (1,2),(0,2),(0,1)
    const std::size_t remap[] = {2, 1, 0};
    for (std::size_t r = 0; r < base.rows; ++r) {
      for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t px = 0; px < base.pixels; ++px) {
          EXPECT_EQ(s3.at(r, remap[p] * base.pixels + px), base.at(r, p * base.pixels + px));
        }
      }
    }

    // Shift and positive scale per component.
    ActivationTensor affine = act;
    for (std::size_t i = 0; i < act.num_samples; ++i) {
      for (std::size_t px = 0; px < act.pixels(); ++px) {
        const std::size_t k = (i * act.components + 1) * act.pixels() + px;
        affine.values[k] = static_cast<float>(act.values[k] * 0.5 + 3.0);
      }
    }
    const SeparabilityMatrix s4 = BuildSpace(affine);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
      EXPECT_NEAR(s4.values[i], base.values[i], 1e-5);  // f32 storage of the rescaled values
    }
  }
}

TEST(BuildSpace, ClassTooSmall) {
  ActivationTensor act;
  act.num_samples = 3;
  act.components = 1;
  act.values = {1, 2, 3};
  act.labels = {0, 0, 1};
  try {
    BuildSpace(act);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kClassTooSmall);
  }
}

TEST(BuildSpace, FileRoundTrip) {
  Rng rng(6);
  const SeparabilityMatrix s = BuildSpace(RandomTensor(rng, 3, 3, 2, 2));
  const auto p = std::filesystem::temp_directory_path() / "acsp_space.bin";
  WriteSpace(s, p);
  const SeparabilityMatrix r = ReadSpace(p);
  EXPECT_EQ(r.rows, s.rows);
  EXPECT_EQ(r.pixels, s.pixels);
  EXPECT_EQ(r.pair_order, s.pair_order);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    EXPECT_EQ(r.values[i], static_cast<double>(static_cast<float>(s.values[i])));
  }
}

}  // namespace
}  // namespace acsp
