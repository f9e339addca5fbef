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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mgfield/errors.hpp"
#include "mgfield/graph.hpp"
#include "mgfield/kernels.hpp"
#include "mgfield/metrics.hpp"

namespace mgfield {
namespace {

// Reference values below were evaluated with mpmath at 40 digits.

TEST(CircleCov, ValueAtZero) {
  EXPECT_NEAR(circle_cov(0.0, 1.0, 1.0, 2.0), 0.65651764274966565, 1e-15);
}

TEST(CircleCov, MinimumAtHalfPerimeter) {
  const double mid = circle_cov(1.0, 1.0, 1.0, 2.0);
  EXPECT_NEAR(mid, 1.0 / (2.0 * std::sinh(1.0)), 1e-15);
  EXPECT_NEAR(mid, 0.42545906411966077, 1e-15);
  for (double h = 0.0; h <= 2.0; h += 0.01) EXPECT_GE(circle_cov(h, 1.0, 1.0, 2.0), mid - 1e-15);
}

TEST(CircleCov, GeneralParameters) {
  EXPECT_NEAR(circle_cov(0.3, 2.0, 1.5, 3.0), 0.061633687641468275, 1e-16);
}

TEST(CircleCov, LargeKappaDoesNotOverflow) {
  const double v = circle_cov(0.5, 1000.0, 1.0, 2.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v / 3.5622882033706428e-221, 1.0, 1e-12);
  EXPECT_NEAR(circle_cov(0.0, 800.0, 1.0, 2.0), 0.000625, 1e-18);
}

TEST(CircleCov, SymmetricAboutHalfPerimeter) {
  const double l = 3.0;
  for (int k = 1; k <= 9; ++k) {
    const double h = 0.1 * k * l;
    EXPECT_NEAR(circle_cov(h, 1.7, 0.8, l), circle_cov(l - h, 1.7, 0.8, l), 1e-15);
  }
}

TEST(CircleCov, OutsideDomainRejected) {
  EXPECT_THROW(circle_cov(-0.1, 1.0, 1.0, 2.0), ValidationError);
  EXPECT_THROW(circle_cov(2.1, 1.0, 1.0, 2.0), ValidationError);
  EXPECT_THROW(circle_cov(0.5, 0.0, 1.0, 2.0), ValidationError);
}

TEST(CycleInversion, RoundTrip) {
  for (double d = 0.0; d <= 1.0; d += 0.05) {
    EXPECT_NEAR(cycle_geodesic_from_resistance(d - d * d / 2.0, 2.0), d, 1e-12);
  }
}

TEST(IsoCov, ExponentialSinglePoint) {
  const MetricGraph g = canonical::interval(1.0);
  const std::vector<PointOnGraph> pts{g.point(0, 0.3)};
  const CovMatrix c = iso_cov_matrix(g, {MetricKind::kGeodesic, ExponentialKernel{2.5, 1.0}}, pts);
  ASSERT_EQ(c.size(), 1);
  EXPECT_EQ(c(0, 0), 2.5);
  EXPECT_EQ(c.provenance, Provenance::kIsotropic);
}

TEST(IsoCov, ResistanceEqualsGeodesicOnTrees) {
  const MetricGraph g = canonical::star(std::vector<double>{1.0, 0.5, 2.0});
  const auto pts = mesh(g, 0.2);
  const CovMatrix geo = iso_cov_matrix(g, {MetricKind::kGeodesic, ExponentialKernel{1.0, 1.3}}, pts);
  const CovMatrix res = iso_cov_matrix(g, {MetricKind::kResistance, ExponentialKernel{1.0, 1.3}}, pts);
  EXPECT_LE((geo.values - res.values).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(IsoCov, CircleKernelPositiveDefiniteOnCircleMesh) {
  const MetricGraph g = canonical::circle(2.0, 8);
  const auto pts = node_mesh(g, 0.05).nodes;
  for (const MetricKind metric : {MetricKind::kGeodesic, MetricKind::kResistance}) {
    const CovMatrix c = iso_cov_matrix(g, {metric, CircleMarkovKernel{1.0, 1.0, 2.0}}, pts);
    EXPECT_GT(c.min_eigenvalue, 0.0);
    EXPECT_NEAR(c.min_eigenvalue, min_eigenvalue(c.values), 1e-14);
  }
}

TEST(IsoCov, CircleKernelSameUnderBothMetricsOnCycle) {
  const MetricGraph g = canonical::circle(2.0, 5);
  const auto pts = node_mesh(g, 0.1).nodes;
  const CovMatrix geo = iso_cov_matrix(g, {MetricKind::kGeodesic, CircleMarkovKernel{1.5, 1.0, 2.0}}, pts);
  const CovMatrix res = iso_cov_matrix(g, {MetricKind::kResistance, CircleMarkovKernel{1.5, 1.0, 2.0}}, pts);
  EXPECT_LE((geo.values - res.values).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(IsoCov, CircleKernelPsdForManyParameters) {
  for (const double kappa : {0.1, 1.0, 10.0}) {
    for (const double l : {0.5, 2.0, 7.0}) {
      const MetricGraph g = canonical::circle(l, 3);
      const CovMatrix c = iso_cov_matrix(g, {MetricKind::kGeodesic, CircleMarkovKernel{kappa, 1.0, l}},
                                         node_mesh(g, l / 60.0).nodes);
      EXPECT_GE(c.min_eigenvalue, -1e-10 * c.values.trace());
    }
  }
}

TEST(IsoCov, ResistanceRejectedOnLoop) {
  const MetricGraph g = canonical::circle(2.0, 1);
  const std::vector<PointOnGraph> pts{g.point(0, 0.3)};
  EXPECT_THROW(iso_cov_matrix(g, {MetricKind::kResistance, ExponentialKernel{1.0, 1.0}}, pts),
               UnsupportedGraphError);
}

TEST(IsoCov, ExponentialFactorisesAlongInterval) {
  const MetricGraph g = canonical::interval(5.0);
  const IsotropicModel m{MetricKind::kGeodesic, ExponentialKernel{1.7, 0.9}};
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> s{unit(rng), unit(rng), unit(rng)};
    std::sort(s.begin(), s.end());
    const std::vector<PointOnGraph> pts{g.point(0, s[0]), g.point(0, s[1]), g.point(0, s[2])};
    const CovMatrix c = iso_cov_matrix(g, m, pts);
    EXPECT_NEAR(c(0, 1) * c(1, 2), c(1, 1) * c(0, 2), 1e-12);
  }
}

TEST(Gap, TwoCyclesUnitParameters) {
  const GapCurve curve = nonexistence_gap(TwoCycles{1.0, 2.0, 1.0, 1.0}, 10001);
  EXPECT_GT(curve.max_gap, 1e-3);
  EXPECT_NEAR(curve.max_gap, 0.42545906411966077, 1e-13);
  EXPECT_EQ(curve.argmax, 0.0);
  EXPECT_EQ(curve.h.size(), 10001u);
  EXPECT_EQ(curve.h.back(), 0.25);
}

TEST(Gap, TwoCyclesInteriorValue) {
  const GapCurve curve = nonexistence_gap(TwoCycles{1.0, 2.0, 1.0, 1.0}, 11);
  ASSERT_NEAR(curve.h[4], 0.1, 1e-15);
  EXPECT_NEAR(curve.lhs[4] - curve.rhs[4], 0.42509006193242518, 1e-13);
}

TEST(Gap, EqualLengthsRejected) {
  EXPECT_THROW(nonexistence_gap(TwoCycles{1.5, 1.5, 1.0, 1.0}), ValidationError);
}

TEST(Gap, TwoCyclesPositiveOnGrid) {
  for (const double l2 : {1.2, 2.0, 5.0}) {
    for (const double kappa : {0.1, 1.0, 10.0}) {
      for (const double tau : {0.1, 1.0, 10.0}) {
        EXPECT_GT(nonexistence_gap(TwoCycles{1.0, l2, kappa, tau}, 2001).max_gap, 0.0);
      }
    }
  }
}

TEST(Gap, CyclePlusEdgePositiveOnGrid) {
  const std::vector<double> grid{0.1, 0.316227766016838, 1.0, 3.16227766016838, 10.0};
  for (double k1 : grid)
    for (double k2 : grid)
      for (double s : grid)
        for (double t : grid) {
          const GapCurve c = nonexistence_gap(CyclePlusEdge{2.0, 1.0, k1, k2, s, t}, 1001);
          EXPECT_GT(c.max_gap, 0.0);
        }
}

TEST(Gap, CyclePlusEdgeRange) {
  const GapCurve c = nonexistence_gap(CyclePlusEdge{2.0, 0.3, 1.0, 1.0, 1.0, 1.0}, 101);
  EXPECT_EQ(c.h.back(), 0.3);
  const GapCurve d = nonexistence_gap(CyclePlusEdge{2.0, 1.0, 1.0, 1.0, 1.0, 1.0}, 101);
  EXPECT_EQ(d.h.back(), 0.5);
}

}  // namespace
}  // namespace mgfield
