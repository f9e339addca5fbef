/*
 * Copyright 2026 The mgfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "mgfield/graph.hpp"
#include "mgfield/linalg.hpp"

namespace mgfield {

enum class MetricKind { kGeodesic, kResistance };

/// sigma2 * exp(-kappa * d)
struct ExponentialKernel {
  double sigma2 = 1.0;
  double kappa = 1.0;
};

/// Covariance of the alpha = 1 Whittle-Matern field on a circle of perimeter
/// `length`, as a function of geodesic distance. Under the resistance metric
/// the distance is first mapped back to geodesic distance on the cycle.
struct CircleMarkovKernel {
  double kappa = 1.0;
  double tau = 1.0;
  double length = 1.0;
};

struct IsotropicModel {
  MetricKind metric = MetricKind::kGeodesic;
  std::variant<ExponentialKernel, CircleMarkovKernel> kernel;
};

/// cosh(kappa (h - l/2)) / (2 kappa tau^2 sinh(kappa l / 2)), evaluated
/// without overflow for large kappa * l. Requires 0 <= h <= l.
double circle_cov(double h, double kappa, double tau, double length);

/// Smaller root d of d - d^2 / l = resistance, the geodesic distance on a
/// cycle of length l with the given resistance distance (<= l/4).
double cycle_geodesic_from_resistance(double resistance, double length);

/// r(d) for the model's kernel.
double evaluate(const IsotropicModel& model, double distance);

/// r(d(p_i, p_j)) with the smallest eigenvalue attached. Throws
/// UnsupportedGraphError for the resistance metric on graphs without
/// Euclidean edges.
CovMatrix iso_cov_matrix(const MetricGraph& g, const IsotropicModel& model, std::span<const PointOnGraph> pts);

/// Two Euclidean cycles of lengths l1 != l2 joined at v, both carrying the
/// circle covariance with the same (kappa, tau). Points at equal resistance
/// distance h from v must have equal covariance with v under any isotropic
/// model; lhs/rhs are the two circle covariances at that matched distance.
struct TwoCycles {
  double l1 = 1.0;
  double l2 = 2.0;
  double kappa = 1.0;
  double tau = 1.0;
};

/// A Euclidean cycle of length l joined to an edge of length l_edge. On the
/// edge a Markov stationary field has covariance sigma^2 exp(-kappa1 h); on
/// the cycle the circle covariance with (kappa2, tau).
struct CyclePlusEdge {
  double l = 2.0;
  double l_edge = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double sigma = 1.0;
  double tau = 1.0;
};

struct GapCurve {
  std::vector<double> h;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double max_gap = 0.0;
  double argmax = 0.0;
  /// max |lhs - rhs| / max(|lhs|, |rhs|): insensitive to the overall scale.
  double max_relative_gap = 0.0;
};

/// Grid of `points` values over h in [0, min(l1, l2) / 4]. Throws
/// ValidationError when l1 == l2.
GapCurve nonexistence_gap(const TwoCycles& c, std::size_t points = 10001);
/// Grid over h in [0, min(l_edge, l / 4)].
GapCurve nonexistence_gap(const CyclePlusEdge& c, std::size_t points = 10001);

}  // namespace mgfield
