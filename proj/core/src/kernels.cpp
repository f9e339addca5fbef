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

#include "mgfield/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "mgfield/errors.hpp"
#include "mgfield/metrics.hpp"

namespace mgfield {
namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string(name) + " must be positive");
}

GapCurve scan(double h_max, std::size_t points, const std::function<double(double)>& lhs,
              const std::function<double(double)>& rhs) {
  if (points < 2) throw ValidationError("gap grid needs at least two points");
  GapCurve curve;
  curve.h.reserve(points);
  curve.lhs.reserve(points);
  curve.rhs.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double h = h_max * static_cast<double>(i) / static_cast<double>(points - 1);
    const double a = lhs(h), b = rhs(h);
    curve.h.push_back(h);
    curve.lhs.push_back(a);
    curve.rhs.push_back(b);
    const double gap = std::abs(a - b);
    if (gap > curve.max_gap) {
      curve.max_gap = gap;
      curve.argmax = h;
    }
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale > 0.0) curve.max_relative_gap = std::max(curve.max_relative_gap, gap / scale);
  }
  return curve;
}

}  // namespace

double circle_cov(double h, double kappa, double tau, double length) {
  require_positive(kappa, "kappa");
  require_positive(tau, "tau");
  require_positive(length, "length");
  const double slack = 1e-12 * length;
  if (!(h >= -slack && h <= length + slack)) {
    throw ValidationError("circle covariance needs 0 <= h <= length");
  }
  // cosh(x) / sinh(y) with 0 <= x <= y, rewritten in decaying exponentials.
  const double x = kappa * std::abs(std::clamp(h, 0.0, length) - 0.5 * length);
  const double y = 0.5 * kappa * length;
  const double ratio = std::exp(x - y) * (1.0 + std::exp(-2.0 * x)) / -std::expm1(-2.0 * y);
  return ratio / (2.0 * kappa * tau * tau);
}

double cycle_geodesic_from_resistance(double resistance, double length) {
  require_positive(length, "length");
  const double disc = std::max(0.0, 1.0 - 4.0 * resistance / length);
  // 0.5 l (1 - sqrt(disc)) written to avoid cancellation for small resistance.
  return 2.0 * resistance / (1.0 + std::sqrt(disc));
}

double evaluate(const IsotropicModel& model, double distance) {
  if (const auto* e = std::get_if<ExponentialKernel>(&model.kernel)) {
    require_positive(e->sigma2, "sigma2");
    require_positive(e->kappa, "kappa");
    return e->sigma2 * std::exp(-e->kappa * distance);
  }
  const auto& c = std::get<CircleMarkovKernel>(model.kernel);
  const double d = model.metric == MetricKind::kResistance ? cycle_geodesic_from_resistance(distance, c.length)
                                                           : distance;
  return circle_cov(d, c.kappa, c.tau, c.length);
}

CovMatrix iso_cov_matrix(const MetricGraph& g, const IsotropicModel& model, std::span<const PointOnGraph> pts) {
  std::optional<ResistanceStructure> rs;
  if (model.metric == MetricKind::kResistance) rs = resistance_structure(g);

  const auto n = static_cast<Eigen::Index>(pts.size());
  CovMatrix out;
  out.provenance = Provenance::kIsotropic;
  out.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& p = pts[static_cast<std::size_t>(i)];
      const auto& q = pts[static_cast<std::size_t>(j)];
      const double d = rs ? resistance_distance(g, *rs, p, q) : geodesic_distance(g, p, q);
      out.values(i, j) = out.values(j, i) = evaluate(model, d);
    }
  }
  out.min_eigenvalue = min_eigenvalue(out.values);
  return out;
}

GapCurve nonexistence_gap(const TwoCycles& c, std::size_t points) {
  require_positive(c.l1, "l1");
  require_positive(c.l2, "l2");
  require_positive(c.kappa, "kappa");
  require_positive(c.tau, "tau");
  if (c.l1 == c.l2) throw ValidationError("two-cycle gap is degenerate when both cycles have the same length");
  const double h_max = 0.25 * std::min(c.l1, c.l2);
  return scan(
      h_max, points,
      [&](double h) { return circle_cov(cycle_geodesic_from_resistance(h, c.l1), c.kappa, c.tau, c.l1); },
      [&](double h) { return circle_cov(cycle_geodesic_from_resistance(h, c.l2), c.kappa, c.tau, c.l2); });
}

GapCurve nonexistence_gap(const CyclePlusEdge& c, std::size_t points) {
  require_positive(c.l, "l");
  require_positive(c.l_edge, "l_edge");
  require_positive(c.kappa1, "kappa1");
  require_positive(c.kappa2, "kappa2");
  require_positive(c.sigma, "sigma");
  require_positive(c.tau, "tau");
  const double h_max = std::min(c.l_edge, 0.25 * c.l);
  return scan(
      h_max, points, [&](double h) { return c.sigma * c.sigma * std::exp(-c.kappa1 * h); },
      [&](double h) { return circle_cov(cycle_geodesic_from_resistance(h, c.l), c.kappa2, c.tau, c.l); });
}

}  // namespace mgfield
