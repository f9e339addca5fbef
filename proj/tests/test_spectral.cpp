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

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "mgfield/errors.hpp"
#include "mgfield/exact_markov.hpp"
#include "mgfield/graph.hpp"
#include "mgfield/kernels.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/spectral.hpp"

namespace mgfield {
namespace {

MetricGraph unit_star() { return canonical::star(std::vector<double>{1.0, 1.0, 1.0}); }

TEST(Assemble, MatricesSymmetricAndStiffnessDefinite) {
  const MetricGraph g = canonical::figure_eight(1.0, 2.0);
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 0.8, 1.3), 0.05);
  EXPECT_EQ(op.mass(), op.mass().transpose());
  EXPECT_EQ(op.stiffness(), op.stiffness().transpose());
  EXPECT_GT(min_eigenvalue(op.stiffness()), 0.0);
  EXPECT_NEAR(op.mass().sum(), g.total_length(), 1e-12);
}

TEST(Assemble, SharedVertexDegreesOfFreedom) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.25);
  EXPECT_EQ(op.dof_count(), 4u + 3u * 3u);
  for (EdgeIndex e = 0; e < 3; ++e) EXPECT_EQ(op.mesh().edge_nodes[e].back(), 3u);
}

TEST(Assemble, InvalidSpacingRejected) {
  const MetricGraph g = unit_star();
  EXPECT_THROW(assemble(g, FieldModel::uniform(g, 1.0), 0.0), ValidationError);
  EXPECT_THROW(assemble(g, FieldModel::uniform(g, 1.0), -1.0), ValidationError);
}

TEST(Spectrum, IntervalApproachesNeumannEigenvalues) {
  const MetricGraph g = canonical::interval(1.0);
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 5e-3);
  for (int k = 0; k < 5; ++k) {
    const double exact = 1.0 + std::pow(k * M_PI, 2);
    EXPECT_NEAR(op.eigenvalues()(k) / exact, 1.0, 1e-3);
  }
  EXPECT_NEAR(op.eigenvalues()(1), 10.869604401089358, 1e-2);
}

TEST(Spectrum, CircleApproachesDoubleEigenvalues) {
  const double len = 2.0, kappa = 1.5;
  const MetricGraph g = canonical::circle(len, 4);
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, kappa), 5e-3);
  EXPECT_NEAR(op.eigenvalues()(0), kappa * kappa, 1e-10);
  for (int k = 1; k <= 3; ++k) {
    const double exact = kappa * kappa + std::pow(2.0 * M_PI * k / len, 2);
    EXPECT_NEAR(op.eigenvalues()(2 * k - 1) / exact, 1.0, 1e-3);
    EXPECT_NEAR(op.eigenvalues()(2 * k) / exact, 1.0, 1e-3);
  }
}

TEST(Spectrum, ConstantIsGroundStateForUniformKappa) {
  const MetricGraph g = canonical::tadpole(2.0, 1.0);
  const double kappa = 1.2;
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, kappa, 0.7), 0.02);
  EXPECT_NEAR(op.eigenvalues()(0), kappa * kappa, 1e-10);
  const Eigen::VectorXd e0 = op.eigenvectors().col(0);
  const double level = 1.0 / std::sqrt(g.total_length());
  EXPECT_LE((e0.cwiseAbs().array() - level).abs().maxCoeff(), 1e-9);
}

TEST(Spectrum, LowerBoundAndOrthonormality) {
  for (const MetricGraph& g : {unit_star(), canonical::figure_eight(1.0, 2.0), canonical::tadpole(2.0, 1.0),
                               canonical::circle(1.0, 1)}) {
    FieldModel m = FieldModel::uniform(g, 1.0);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      m.kappa[e] = 0.6 + 0.3 * static_cast<double>(e % 3);
      m.a[e] = 0.5 + 0.5 * static_cast<double>(e % 2);
    }
    const DiscreteOperator op = assemble(g, m, 0.02);
    const double kmin = *std::min_element(m.kappa.begin(), m.kappa.end());
    EXPECT_GE(op.eigenvalues()(0), kmin * kmin - 1e-8);
    for (Eigen::Index i = 1; i < op.eigenvalues().size(); ++i) {
      EXPECT_GE(op.eigenvalues()(i), op.eigenvalues()(i - 1));
    }
    const Eigen::MatrixXd& v = op.eigenvectors();
    const Eigen::MatrixXd gram = v.transpose() * op.mass() * v;
    const auto n = gram.rows();
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Interpolation, NodesAndWeights) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.25);
  const auto& nodes = op.mesh().nodes;
  const Eigen::MatrixXd p = op.interpolation_matrix(nodes);
  EXPECT_EQ(p, Eigen::MatrixXd::Identity(p.rows(), p.cols()));
  const std::vector<PointOnGraph> pts{g.point(0, 0.1), g.point(2, 0.9), g.point(1, 1.0)};
  const Eigen::MatrixXd q = op.interpolation_matrix(pts);
  for (Eigen::Index r = 0; r < q.rows(); ++r) EXPECT_NEAR(q.row(r).sum(), 1.0, 1e-15);
  EXPECT_EQ(q(2, 3), 1.0);
}

TEST(SpectralCov, AlphaOneEqualsInverseStiffness) {
  const MetricGraph g = canonical::tadpole(2.0, 1.0);
  const double tau = 0.8;
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.1, 1.0, tau), 0.05);
  const auto& nodes = op.mesh().nodes;
  const SpectralCov sc = spectral_cov(op, 1.0, tau, nodes);
  const Eigen::MatrixXd direct = op.stiffness().inverse() / (tau * tau);
  EXPECT_LE((sc.cov.values - direct).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(sc.truncation, op.dof_count());
  EXPECT_EQ(sc.cov.provenance, Provenance::kSpectral);
}

TEST(SpectralCov, ConvergesToExactOnStar) {
  const MetricGraph g = unit_star();
  const FieldModel m = FieldModel::uniform(g, 1.0);
  const auto pts = mesh(g, 0.2);
  const Eigen::MatrixXd exact = full_cov(g, m, pts).values;
  double previous = 1e300;
  for (const double h : {0.04, 0.02, 0.01}) {
    const DiscreteOperator op = assemble(g, m, h);
    const double err = (spectral_cov(op, 1.0, 1.0, pts).cov.values - exact).cwiseAbs().maxCoeff();
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-3);
}

TEST(SpectralCov, ConvergesToCircleCovariance) {
  const MetricGraph g = canonical::circle(2.0, 4);
  const auto pts = mesh(g, 0.25);
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.01);
  const Eigen::MatrixXd c = spectral_cov(op, 1.0, 1.0, pts).cov.values;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double d = geodesic_distance(g, pts[i], pts[j]);
      EXPECT_NEAR(c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), circle_cov(d, 1.0, 1.0, 2.0), 1e-3);
    }
  }
}

TEST(SpectralCov, VarianceNonincreasingInAlpha) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.5), 0.05);
  ASSERT_GE(op.eigenvalues()(0), 1.0);
  const std::vector<PointOnGraph> pts{g.point(0, 0.3), g.vertex_point(3)};
  double previous = 1e300;
  for (const double alpha : {0.6, 0.75, 1.0, 1.5, 2.0, 3.0}) {
    const double v = spectral_cov(op, alpha, 1.0, pts).cov(0, 0);
    EXPECT_LE(v, previous);
    previous = v;
  }
}

TEST(SpectralCov, SymmetricPsdWithTailEstimate) {
  const MetricGraph g = canonical::figure_eight(1.0, 2.0);
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.05);
  const auto pts = mesh(g, 0.1);
  const SpectralCov sc = spectral_cov(op, 0.75, 1.0, pts, 20);
  EXPECT_EQ(sc.cov.values, sc.cov.values.transpose());
  EXPECT_GE(sc.cov.min_eigenvalue, -1e-10 * sc.cov.values.trace());
  EXPECT_EQ(sc.truncation, 20u);
  EXPECT_DOUBLE_EQ(sc.tail_estimate, std::pow(op.eigenvalues()(19), -0.25));
}

TEST(SpectralCov, InvalidArgumentsRejected) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.25);
  const auto pts = mesh(g, 0.5);
  EXPECT_THROW(spectral_cov(op, 0.5, 1.0, pts), ValidationError);
  EXPECT_THROW(spectral_cov(op, 0.3, 1.0, pts), ValidationError);
  EXPECT_THROW(spectral_cov(op, 1.0, 1.0, pts, op.dof_count() + 1), ValidationError);
  EXPECT_THROW(kl_sample(op, 0.5, 1.0, 10, 1), ValidationError);
}

TEST(SpectralCov, FractionalExponentIsNotMarkov) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0, 1.0, 1.0, 0.75), 0.02);
  std::vector<PointOnGraph> pts{g.vertex_point(3)};
  for (const double t : {0.2, 0.5, 0.8}) pts.push_back(g.point(0, t));
  for (const double t : {0.2, 0.5, 0.8}) pts.push_back(g.point(1, t));
  const std::vector<std::size_t> a{1, 2, 3}, b{4, 5, 6}, s{0};
  const double frac = markov_check(spectral_cov(op, 0.75, 1.0, pts, 100).cov.values, a, b, s);
  const double one = markov_check(spectral_cov(op, 1.0, 1.0, pts).cov.values, a, b, s);
  EXPECT_GT(frac, 1e-3);
  EXPECT_LT(one, 1e-10);
}

TEST(KlSample, EmpiricalVarianceMatchesDiagonal) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.25);
  const std::size_t n = 100000;
  const Eigen::MatrixXd s = kl_sample(op, 0.75, 1.3, n, 77);
  ASSERT_EQ(s.rows(), static_cast<Eigen::Index>(n));
  ASSERT_EQ(s.cols(), static_cast<Eigen::Index>(op.dof_count()));
  const Eigen::MatrixXd c = spectral_cov(op, 0.75, 1.3, op.mesh().nodes).cov.values;
  for (Eigen::Index i = 0; i < s.cols(); ++i) {
    const double emp = s.col(i).squaredNorm() / static_cast<double>(n);
    const double se = std::sqrt(2.0 / static_cast<double>(n)) * c(i, i);
    EXPECT_LE(std::abs(emp - c(i, i)), 3.0 * se);
  }
}

TEST(KlSample, DeterministicForSeed) {
  const MetricGraph g = unit_star();
  const DiscreteOperator op = assemble(g, FieldModel::uniform(g, 1.0), 0.1);
  EXPECT_EQ(kl_sample(op, 1.5, 1.0, 20, 5), kl_sample(op, 1.5, 1.0, 20, 5));
  EXPECT_NE(kl_sample(op, 1.5, 1.0, 20, 5), kl_sample(op, 1.5, 1.0, 20, 6));
  EXPECT_EQ(kl_sample(op, 1.5, 1.0, 0, 5).rows(), 0);
}

}  // namespace
}  // namespace mgfield
