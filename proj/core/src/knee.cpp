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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <Eigen/Dense>

#include "acsp/error.hpp"

namespace acsp {

double Polynomial::operator()(double x) const {
  const double t = (x - center_) / scale_;
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Polynomial::Derivative(double x, int order) const {
  const double t = (x - center_) / scale_;
  double acc = 0.0;
  for (int p = degree(); p >= order; --p) {
    double falling = 1.0;
    for (int q = 0; q < order; ++q) falling *= p - q;
    acc = acc * t + falling * coeffs_[p];
  }
  return acc / std::pow(scale_, order);
}

std::vector<double> Polynomial::Coefficients() const {
  // Expand sum_p c_p ((x - center) / scale)^p with the binomial theorem.
  const int d = degree();
  std::vector<double> out(coeffs_.size(), 0.0);
  for (int p = 0; p <= d; ++p) {
    const double lead = coeffs_[p] / std::pow(scale_, p);
    double binom = 1.0;
    for (int q = 0; q <= p; ++q) {
      // term: binom(p, q) x^q (-center)^(p - q)
      out[q] += lead * binom * std::pow(-center_, p - q);
      binom = binom * (p - q) / (q + 1);
    }
  }
  return out;
}

Polynomial PolyFit(std::span<const double> xs, std::span<const double> ys, int degree) {
  if (degree < 0 || xs.size() != ys.size()) {
    throw Error(ErrorCode::kUnderdetermined, "polyfit needs matching xs/ys and degree >= 0");
  }
  const std::set<double> distinct(xs.begin(), xs.end());
  if (distinct.size() < static_cast<std::size_t>(degree) + 1) {
    throw Error(ErrorCode::kUnderdetermined, "polyfit of degree " + std::to_string(degree) +
                                                 " needs " + std::to_string(degree + 1) +
                                                 " distinct x values");
  }
  const double lo = *distinct.begin();
  const double hi = *distinct.rbegin();
  const double center = 0.5 * (lo + hi);
  const double scale = hi > lo ? 0.5 * (hi - lo) : 1.0;

  const auto n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd vander(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (xs[i] - center) / scale;
    double power = 1.0;
    for (int p = 0; p <= degree; ++p) {
      vander(i, p) = power;
      power *= t;
    }
    rhs(i) = ys[i];
  }
  const Eigen::VectorXd sol = vander.colPivHouseholderQr().solve(rhs);
  return Polynomial(center, scale, std::vector<double>(sol.data(), sol.data() + sol.size()));
}

KneeResult FindKnee(std::span<const std::size_t> ks, std::span<const double> ys,
                    const KneeOptions& options) {
  if (ks.size() != ys.size()) throw Error(ErrorCode::kBadParams, "ks and ys differ in length");
  if (options.degree < 1) throw Error(ErrorCode::kBadParams, "knee degree must be >= 1");
  const std::size_t m = ks.size();
  if (m < static_cast<std::size_t>(options.degree) + 2) {
    throw Error(ErrorCode::kTooFewPoints, "knee detection with degree " +
                                              std::to_string(options.degree) + " needs " +
                                              std::to_string(options.degree + 2) + " points, got " +
                                              std::to_string(m));
  }

  std::vector<double> xs(ks.begin(), ks.end());
  const Polynomial fit = PolyFit(xs, ys, options.degree);

  KneeResult r;
  r.degree = options.degree;
  r.fitted_coeffs = fit.Coefficients();
  r.ks.assign(ks.begin(), ks.end());
  r.fitted.resize(m);
  for (std::size_t i = 0; i < m; ++i) r.fitted[i] = fit(xs[i]);

  std::vector<double> y = r.fitted;
  if (y.back() < y.front()) {
    r.flipped = true;
    for (auto& v : y) v = -v;
  }
  const double y_lo = *std::min_element(y.begin(), y.end());
  const double y_hi = *std::max_element(y.begin(), y.end());
  const double x_lo = xs.front();
  const double x_hi = xs.back();
  r.difference_curve.assign(m, 0.0);
  const double span = y_hi - y_lo;
  if (!(span > 1e-12 * std::max(1.0, std::abs(y_hi))) || !(x_hi > x_lo)) return r;

  for (std::size_t i = 0; i < m; ++i) {
    r.difference_curve[i] = (y[i] - y_lo) / span - (xs[i] - x_lo) / (x_hi - x_lo);
  }
  const auto peak = std::max_element(r.difference_curve.begin(), r.difference_curve.end());
  const double threshold = options.sensitivity / static_cast<double>(m - 1);
  if (*peak > threshold) {
    const std::size_t at = static_cast<std::size_t>(peak - r.difference_curve.begin());
    r.k_prime = ks[at];
    const double slope = fit.Derivative(xs[at], 1);
    r.curvature = std::abs(fit.Derivative(xs[at], 2)) / std::pow(1.0 + slope * slope, 1.5);
  }
  return r;
}

KneeResult FindKnee(const MssCurve& curve, const KneeOptions& options) {
  std::vector<std::size_t> ks;
  std::vector<double> ys;
  for (const auto& [k, v] : curve.entries) {
    ks.push_back(k);
    ys.push_back(v);
  }
  return FindKnee(ks, ys, options);
}

std::size_t SelectK(const MssCurve& curve, const KneeOptions& options) {
  if (curve.entries.empty()) throw Error(ErrorCode::kTooFewPoints, "empty MSS curve");
  const KneeResult knee = FindKnee(curve, options);
  return knee.k_prime.value_or(curve.entries.rbegin()->first);
}

std::string DifferenceCurveCsv(const KneeResult& knee) {
  std::string out = "k,fitted,difference\n";
  char line[96];
  for (std::size_t i = 0; i < knee.ks.size(); ++i) {
    std::snprintf(line, sizeof(line), "%zu,%.12f,%.12f\n", knee.ks[i], knee.fitted[i],
                  knee.difference_curve[i]);
    out += line;
  }
  return out;
}

}  // namespace acsp
