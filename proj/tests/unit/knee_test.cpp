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

#include "acsp/knee.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "acsp/error.hpp"
#include "oracles.hpp"

namespace acsp {
namespace {

struct Curve {
  std::vector<std::size_t> ks;
  std::vector<double> ys;
  std::vector<double> xs() const { return {ks.begin(), ks.end()}; }
};

Curve Sample(const std::function<double(double)>& f, std::size_t lo, std::size_t hi,
             std::size_t step = 1) {
  Curve c;
  for (std::size_t k = lo; k <= hi; k += step) {
    c.ks.push_back(k);
    c.ys.push_back(f(static_cast<double>(k)));
  }
  return c;
}

std::size_t NearestK(const std::vector<std::size_t>& ks, double x) {
  std::size_t best = ks[0];
  for (auto k : ks) {
    if (std::fabs(static_cast<double>(k) - x) < std::fabs(static_cast<double>(best) - x)) best = k;
  }
  return best;
}

TEST(PolyFit, ExactQuadratic) {
  std::vector<double> xs, ys;
  for (double x = -2; x <= 5; x += 0.5) {
    xs.push_back(x);
    ys.push_back(2 * x * x - 3 * x + 1);
  }
  const auto c = PolyFit(xs, ys, 2).Coefficients();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], 1, 1e-9);
  EXPECT_NEAR(c[1], -3, 1e-9);
  EXPECT_NEAR(c[2], 2, 1e-9);
}

TEST(PolyFit, ConstantData) {
  const std::vector<double> xs = {2, 3, 4, 5, 6}, ys = {0.7, 0.7, 0.7, 0.7, 0.7};
  for (int degree = 1; degree <= 3; ++degree) {
    const auto c = PolyFit(xs, ys, degree).Coefficients();
    EXPECT_NEAR(c[0], 0.7, 1e-9);
    for (int p = 1; p <= degree; ++p) EXPECT_NEAR(c[p], 0.0, 1e-9);
  }
}

TEST(PolyFit, InterpolatesMinimalPoints) {
  const std::vector<double> xs = {2, 7, 11}, ys = {0.31, 0.86, 0.79};
  const Polynomial p = PolyFit(xs, ys, 2);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p(xs[i]), ys[i], 1e-12);
  EXPECT_THROW(PolyFit(std::vector<double>{1, 2}, std::vector<double>{1, 2}, 2), Error);
}

TEST(PolyFit, AgreesWithNormalEquations) {
  const Curve c = Sample([](double x) { return std::log(x) + 0.01 * std::sin(7 * x); }, 2, 40);
  for (int degree = 2; degree <= 5; ++degree) {
    const Polynomial p = PolyFit(c.xs(), c.ys, degree);
    const auto oracle_fit = oracle::NormalEquationFit(c.xs(), c.ys, degree);
    for (double x = 2; x <= 40; x += 0.25) {
      EXPECT_NEAR(p(x), static_cast<double>(oracle_fit(x)), 1e-9) << degree;
    }
  }
}

TEST(PolyFit, Derivative) {
  const Polynomial p = PolyFit(std::vector<double>{0, 1, 2, 3}, std::vector<double>{1, 2, 9, 28}, 3);
  // x^3 + 1
  EXPECT_NEAR(p.Derivative(2.0), 12.0, 1e-9);
  EXPECT_NEAR(p.Derivative(2.0, 2), 12.0, 1e-9);
}

TEST(FindKnee, SaturatingMatchesDenseScan) {
  const Curve c = Sample([](double x) { return x / (x + 1); }, 2, 50);
  const KneeResult r = FindKnee(c.ks, c.ys);
  ASSERT_TRUE(r.k_prime.has_value());
  const auto dense = oracle::DenseKneeScan(c.xs(), c.ys, 2);
  ASSERT_TRUE(dense.found);
  EXPECT_EQ(*r.k_prime, NearestK(c.ks, dense.x_star));
  EXPECT_FALSE(r.flipped);
  EXPECT_EQ(r.ks, c.ks);
  EXPECT_EQ(r.difference_curve.size(), c.ks.size());
}

TEST(FindKnee, ConstantAndLinearHaveNoKnee) {
  const Curve flat = Sample([](double) { return 0.9; }, 2, 30);
  EXPECT_FALSE(FindKnee(flat.ks, flat.ys).k_prime.has_value());
  const Curve line = Sample([](double x) { return 0.02 * x + 0.1; }, 2, 30);
  EXPECT_FALSE(FindKnee(line.ks, line.ys).k_prime.has_value());
  const Curve down = Sample([](double x) { return 1.0 - 0.02 * x; }, 2, 30);
  EXPECT_FALSE(FindKnee(down.ks, down.ys).k_prime.has_value());
}

TEST(FindKnee, DecreasingIsFlipped) {
  const Curve c = Sample([](double x) { return 1.0 / x; }, 2, 40);
  const KneeResult r = FindKnee(c.ks, c.ys);
  EXPECT_TRUE(r.flipped);
  ASSERT_TRUE(r.k_prime.has_value());
  Curve neg = c;
  for (auto& y : neg.ys) y = -y;
  EXPECT_EQ(FindKnee(neg.ks, neg.ys).k_prime, r.k_prime);
}

TEST(FindKnee, AffineInvariant) {
  const Curve c = Sample([](double x) { return 1 - std::exp(-x / 6); }, 2, 45);
  const auto base = FindKnee(c.ks, c.ys).k_prime;
  ASSERT_TRUE(base.has_value());
  for (double scale : {0.01, 3.0, 250.0}) {
    for (double shift : {-4.0, 0.0, 17.0}) {
      Curve t = c;
      for (auto& y : t.ys) y = scale * y + shift;
      EXPECT_EQ(FindKnee(t.ks, t.ys).k_prime, base) << scale << " " << shift;
    }
  }
}

TEST(FindKnee, SamplingStability) {
  for (double tau : {3.0, 6.0, 10.0}) {
    auto f = [tau](double x) { return 1 - std::exp(-x / tau); };
    const Curve coarse = Sample(f, 2, 60, 2);
    const Curve fine = Sample(f, 2, 60, 1);
    const auto a = FindKnee(coarse.ks, coarse.ys).k_prime;
    const auto b = FindKnee(fine.ks, fine.ys).k_prime;
    ASSERT_TRUE(a && b);
    EXPECT_LE(std::abs(static_cast<long>(*a) - static_cast<long>(*b)), 2) << tau;
  }
}

TEST(FindKnee, HigherDegreeKneesComeEarlier) {
  for (double b : {2.0, 4.0, 8.0}) {
    const Curve c = Sample([b](double x) { return x / (x + b); }, 2, 64);
    KneeOptions two, five;
    five.degree = 5;
    const auto k2 = FindKnee(c.ks, c.ys, two).k_prime;
    const auto k5 = FindKnee(c.ks, c.ys, five).k_prime;
    ASSERT_TRUE(k2 && k5);
    EXPECT_LE(*k5, *k2) << b;
  }
}

TEST(FindKnee, Errors) {
  const std::vector<std::size_t> ks = {2, 3, 4};
  const std::vector<double> ys = {0.1, 0.5, 0.6};
  try {
    FindKnee(ks, ys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewPoints);
  }
}

TEST(FindKnee, Deterministic) {
  const Curve c = Sample([](double x) { return std::log(x); }, 2, 33);
  const KneeResult a = FindKnee(c.ks, c.ys), b = FindKnee(c.ks, c.ys);
  EXPECT_EQ(a.k_prime, b.k_prime);
  EXPECT_EQ(a.fitted_coeffs, b.fitted_coeffs);
  EXPECT_EQ(a.difference_curve, b.difference_curve);
}

TEST(SelectK, FallbackAndDelegation) {
  MssCurve flat;
  for (std::size_t k = 2; k <= 20; ++k) flat.entries[k] = 0.5;
  EXPECT_EQ(SelectK(flat), 20u);
  MssCurve sat;
  for (std::size_t k = 2; k <= 40; ++k) sat.entries[k] = k / (k + 3.0);
  EXPECT_EQ(SelectK(sat), *FindKnee(sat).k_prime);
  const std::string csv = DifferenceCurveCsv(FindKnee(sat));
  EXPECT_EQ(csv.rfind("k,fitted,difference\n", 0), 0u);
}

}  // namespace
}  // namespace acsp
