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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "mgfield/graph.hpp"
#include "mgfield/linalg.hpp"

namespace mgfield {

/// Parameters of (kappa^2 - d/dx(a d/dx))^{alpha/2} (tau u) = W with kappa and
/// a constant on each edge.
struct FieldModel {
  std::vector<double> kappa;
  std::vector<double> a;
  double tau = 1.0;
  double alpha = 1.0;

  static FieldModel uniform(const MetricGraph& g, double kappa, double a = 1.0, double tau = 1.0,
                            double alpha = 1.0);

  /// Throws ValidationError on size mismatch, non-positive coefficients or
  /// alpha <= 1/2.
  void validate(const MetricGraph& g) const;
};

/// Covariance of the independent edge field with Neumann ends, i.e. the
/// Green's function of tau^2 (kappa^2 - a d^2/dx^2) on [0, length]:
///
///   cosh(c min(s,t)) cosh(c (length - max(s,t))) / (tau^2 a c sinh(c length)),
///
/// with c = kappa / sqrt(a). Evaluated in decaying exponentials so large
/// c * length does not overflow.
double neumann_edge_cov(double kappa, double a, double tau, double length, double s, double t);

/// Solutions G1, G2 of (kappa^2 - a d^2/dx^2) G = 0 on one edge with
/// G1(0) = 1, G1(l) = 0, G2(0) = 0, G2(l) = 1, stored as coefficients on the
/// bounded basis exp(-c x), exp(-c (l - x)).
class EdgeBasis {
 public:
  EdgeBasis(double kappa, double a, double length);

  /// [G1(x), G2(x)]
  Eigen::Vector2d operator()(double x) const;
  /// [G1'(x), G2'(x)]
  Eigen::Vector2d derivative(double x) const;

  double rate() const noexcept { return rate_; }
  double length() const noexcept { return length_; }
  /// Row j holds the coefficients of G_{j+1} on (exp(-c x), exp(-c (l - x))).
  const Eigen::Matrix2d& coefficients() const noexcept { return coef_; }

 private:
  double rate_;
  double length_;
  Eigen::Matrix2d coef_;
};

EdgeBasis edge_basis(const MetricGraph& g, const FieldModel& m, EdgeIndex e);

/// Neumann edge covariance conditioned to vanish at both ends of edge e.
double bridge_cov(const MetricGraph& g, const FieldModel& m, EdgeIndex e, double s, double t);

/// Position of an edge end in the endpoint vector: [u_0(0), u_0(l_0), u_1(0), ...].
constexpr std::size_t endpoint_slot(EdgeIndex e, bool at_end) noexcept { return 2 * e + (at_end ? 1 : 0); }

/// Rows of +1/-1 over the endpoint vector, one per consecutive pair of edge
/// ends meeting at a vertex (incidences in edge order). Rank is
/// sum_v (deg(v) - 1). A loop contributes the row tying its two ends.
Eigen::MatrixXd continuity_constraints(const MetricGraph& g);

/// Block-diagonal covariance of the endpoint vector of the independent
/// Neumann edge fields.
Eigen::MatrixXd endpoint_prior(const MetricGraph& g, const FieldModel& m);

/// prior - prior K^T (K prior K^T)^+ K prior. Uses a pseudo-inverse with
/// relative cutoff 1e-12 when K prior K^T is singular (redundant rows), and
/// throws ConditioningError if nothing survives the cutoff.
Eigen::MatrixXd condition_on_constraints(const Eigen::MatrixXd& prior, const Eigen::MatrixXd& k);

/// Exact alpha = 1 field: independent Neumann edge fields conditioned to be
/// continuous at the vertices, with interior values from the edge
/// representation (bridge + boundary interpolation).
class ExactField {
 public:
  /// Throws RouteToSpectralError unless m.alpha == 1.
  ExactField(MetricGraph g, FieldModel m);
  /// Same, with a caller-supplied constraint matrix.
  ExactField(MetricGraph g, FieldModel m, const Eigen::MatrixXd& constraints);

  const MetricGraph& graph() const noexcept { return graph_; }
  const FieldModel& model() const noexcept { return model_; }

  double covariance(const PointOnGraph& p, const PointOnGraph& q) const;
  /// G_e(s)^T Cov(B u_e, B u_e') G_e'(t)
  double boundary_part(const PointOnGraph& p, const PointOnGraph& q) const;
  /// Bridge covariance when p and q share an edge, else 0.
  double bridge_part(const PointOnGraph& p, const PointOnGraph& q) const;

  CovMatrix cov(std::span<const PointOnGraph> pts) const;
  Eigen::MatrixXd cross(std::span<const PointOnGraph> a, std::span<const PointOnGraph> b) const;

  /// Conditioned covariance of all 2|E| edge-end values.
  const Eigen::MatrixXd& endpoint_cov() const noexcept { return endpoint_cov_; }
  /// Covariance of one value per vertex (vertex order).
  Eigen::MatrixXd vertex_cov() const;

  const EdgeBasis& basis(EdgeIndex e) const { return bases_.at(e); }

 private:
  MetricGraph graph_;
  FieldModel model_;
  std::vector<EdgeBasis> bases_;
  Eigen::MatrixXd endpoint_cov_;
};

/// Conditioned vertex covariance, provenance exact.
CovMatrix vertex_field_cov(const MetricGraph& g, const FieldModel& m);

CovMatrix full_cov(const MetricGraph& g, const FieldModel& m, std::span<const PointOnGraph> pts);

/// n x |pts| zero-mean draws from full_cov; replicate r uses substream (seed, r).
Eigen::MatrixXd sample(const MetricGraph& g, const FieldModel& m, std::span<const PointOnGraph> pts,
                       std::size_t n, std::uint64_t seed);

/// max |C_AB - C_AS C_SS^{-1} C_SB|.
double markov_check(const Eigen::MatrixXd& c, std::span<const std::size_t> a, std::span<const std::size_t> b,
                    std::span<const std::size_t> s);

using CovarianceFunction = std::function<double(const PointOnGraph&, const PointOnGraph&)>;

/// |sum over edge ends at v of the outward derivative of rho(., probe)|,
/// with second-order one-sided differences of spacing h. Throws
/// ValidationError when the probe sits at v, and when an edge is shorter than
/// 2h or the probe lies inside a difference stencil.
double kirchhoff_residual(const MetricGraph& g, const CovarianceFunction& rho, VertexIndex v,
                          const PointOnGraph& probe, double h);
/// Flux form: each derivative is weighted by the edge's diffusion coefficient.
double kirchhoff_residual(const MetricGraph& g, const FieldModel& m, const CovarianceFunction& rho, VertexIndex v,
                          const PointOnGraph& probe, double h);

}  // namespace mgfield
