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

#ifndef ACSP_KNEE_HPP_
#define ACSP_KNEE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acsp/cluster.hpp"

namespace acsp {

/// Least-squares polynomial. Internally fitted in t = (x - center) / scale
/// for conditioning; Coefficients() converts back to powers of x.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(double center, double scale, std::vector<double> scaled_coeffs)
      : center_(center), scale_(scale), coeffs_(std::move(scaled_coeffs)) {}

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  double operator()(double x) const;
  double Derivative(double x, int order = 1) const;
  /// Ascending powers of x: c0 + c1 x + c2 x^2 + ...
  std::vector<double> Coefficients() const;

 private:
  double center_ = 0.0;
  double scale_ = 1.0;
  std::vector<double> coeffs_;
};

/// Throws Underdetermined unless xs.size() == ys.size() and there are at
/// least degree + 1 distinct xs.
Polynomial PolyFit(std::span<const double> xs, std::span<const double> ys, int degree);

struct KneeOptions {
  int degree = 2;
  double sensitivity = 1.0;
};

struct KneeResult {
  std::optional<std::size_t> k_prime;  // nullopt: no knee
  int degree = 2;
  std::vector<double> fitted_coeffs;     // ascending powers of k
  std::vector<std::size_t> ks;           // swept k values
  std::vector<double> fitted;            // fit evaluated at ks
  std::vector<double> difference_curve;  // normalized y - normalized x
  bool flipped = false;                  // fit was decreasing, y was negated
  double curvature = 0.0;                // of the fit at k_prime (diagnostic)
};

/// Kneedle on the polynomial-smoothed curve: evaluate the fit at the swept
/// ks, min-max normalize both axes, take d = y_n - x_n and report the k at
/// the first maximum of d when it exceeds sensitivity / (m - 1), the mean
/// spacing of the normalized xs. A decreasing fit is negated first.
/// Throws TooFewPoints when the curve has fewer than degree + 2 points.
KneeResult FindKnee(const MssCurve& curve, const KneeOptions& options = {});
KneeResult FindKnee(std::span<const std::size_t> ks, std::span<const double> ys,
                    const KneeOptions& options = {});

/// k' from FindKnee, or the largest swept k when there is no knee.
std::size_t SelectK(const MssCurve& curve, const KneeOptions& options = {});

/// "k,fitted,difference" rows for reports.
std::string DifferenceCurveCsv(const KneeResult& knee);

}  // namespace acsp

#endif  // ACSP_KNEE_HPP_
