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

#include "mgfield/exact_markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "mgfield/errors.hpp"
#include "mgfield/random.hpp"

namespace mgfield {
namespace {

void require_on_edge(double x, double length) {
  const double slack = 1e-12 * length;
  if (!(x >= -slack && x <= length + slack)) {
    throw ValidationError("argument " + std::to_string(x) + " outside edge [0, " + std::to_string(length) + "]");
  }
}

double edge_rate(double kappa, double a) { return kappa / std::sqrt(a); }

}  // namespace

FieldModel FieldModel::uniform(const MetricGraph& g, double kappa, double a, double tau, double alpha) {
  FieldModel m;
  m.kappa.assign(g.edge_count(), kappa);
  m.a.assign(g.edge_count(), a);
  m.tau = tau;
  m.alpha = alpha;
  m.validate(g);
  return m;
}

void FieldModel::validate(const MetricGraph& g) const {
  if (kappa.size() != g.edge_count() || a.size() != g.edge_count()) {
    throw ValidationError("field model needs one kappa and one a per edge");
  }
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (!std::all_of(kappa.begin(), kappa.end(), positive)) throw ValidationError("kappa must be positive");
  if (!std::all_of(a.begin(), a.end(), positive)) throw ValidationError("a must be positive");
  if (!positive(tau)) throw ValidationError("tau must be positive");
  if (!(alpha > 0.5) || !std::isfinite(alpha)) throw ValidationError("alpha must exceed 1/2");
}

double neumann_edge_cov(double kappa, double a, double tau, double length, double s, double t) {
  if (!(kappa > 0.0 && a > 0.0 && tau > 0.0 && length > 0.0)) {
    throw ValidationError("Neumann edge covariance needs positive kappa, a, tau and length");
  }
  require_on_edge(s, length);
  require_on_edge(t, length);
  const double lo = std::clamp(std::min(s, t), 0.0, length);
  const double hi = std::clamp(std::max(s, t), 0.0, length);
  const double c = edge_rate(kappa, a);
  const double num = std::exp(-c * (hi - lo)) * (1.0 + std::exp(-2.0 * c * lo)) *
                     (1.0 + std::exp(-2.0 * c * (length - hi)));
  const double den = -2.0 * std::expm1(-2.0 * c * length);
  return num / den / (tau * tau * a * c);
}

EdgeBasis::EdgeBasis(double kappa, double a, double length) : rate_(edge_rate(kappa, a)), length_(length) {
  if (!(kappa > 0.0 && a > 0.0 && length > 0.0)) throw ValidationError("edge basis needs positive parameters");
  // Boundary values of exp(-c x) and exp(-c (l - x)): rows are x = 0 and x = l.
  const double decay = std::exp(-rate_ * length_);
  Eigen::Matrix2d boundary;
  boundary << 1.0, decay, decay, 1.0;
  Eigen::FullPivLU<Eigen::Matrix2d> lu(boundary);
  if (!lu.isInvertible()) throw NumericalError("edge basis boundary system is singular");
  coef_ = lu.solve(Eigen::Matrix2d::Identity()).transpose();
}

// Evaluated as sinh(c (l - x)) / sinh(c l) and sinh(c x) / sinh(c l), the
// closed-form solution of the boundary system, in decaying exponentials.
Eigen::Vector2d EdgeBasis::operator()(double x) const {
  const double c = rate_, l = length_;
  const double den = std::expm1(-2.0 * c * l);
  return {std::exp(-c * x) * std::expm1(-2.0 * c * (l - x)) / den,
          std::exp(-c * (l - x)) * std::expm1(-2.0 * c * x) / den};
}

Eigen::Vector2d EdgeBasis::derivative(double x) const {
  const double c = rate_, l = length_;
  const double den = -std::expm1(-2.0 * c * l);
  return {-c * std::exp(-c * x) * (1.0 + std::exp(-2.0 * c * (l - x))) / den,
          c * std::exp(-c * (l - x)) * (1.0 + std::exp(-2.0 * c * x)) / den};
}

EdgeBasis edge_basis(const MetricGraph& g, const FieldModel& m, EdgeIndex e) {
  m.validate(g);
  if (m.alpha != 1.0) throw RouteToSpectralError("edge basis is implemented for alpha = 1 only");
  return EdgeBasis(m.kappa.at(e), m.a.at(e), g.length(e));
}

double bridge_cov(const MetricGraph& g, const FieldModel& m, EdgeIndex e, double s, double t) {
  m.validate(g);
  if (m.alpha != 1.0) throw RouteToSpectralError("bridge covariance is implemented for alpha = 1 only");
  const double k = m.kappa.at(e), a = m.a.at(e), len = g.length(e);
  auto n = [&](double x, double y) { return neumann_edge_cov(k, a, m.tau, len, x, y); };
  Eigen::Matrix2d ends;
  ends << n(0, 0), n(0, len), n(len, 0), n(len, len);
  const Eigen::Vector2d ns(n(s, 0), n(s, len));
  const Eigen::Vector2d nt(n(0, t), n(len, t));
  const double value = n(s, t) - ns.dot(ends.llt().solve(nt));
  // Exact zero at the ends; rounding would otherwise leave ~1e-17.
  if (s <= 0.0 || s >= len || t <= 0.0 || t >= len) return 0.0;
  return value;
}

Eigen::MatrixXd continuity_constraints(const MetricGraph& g) {
  std::size_t rows = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) rows += g.degree(v) - 1;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(2 * g.edge_count()));
  Eigen::Index r = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incidences(v);
    for (std::size_t i = 1; i < inc.size(); ++i, ++r) {
      k(r, static_cast<Eigen::Index>(endpoint_slot(inc[i - 1].edge, inc[i - 1].at_end))) = 1.0;
      k(r, static_cast<Eigen::Index>(endpoint_slot(inc[i].edge, inc[i].at_end))) = -1.0;
    }
  }
  return k;
}

Eigen::MatrixXd endpoint_prior(const MetricGraph& g, const FieldModel& m) {
  m.validate(g);
  const auto n = static_cast<Eigen::Index>(2 * g.edge_count());
  Eigen::MatrixXd prior = Eigen::MatrixXd::Zero(n, n);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const double len = g.length(e);
    const auto i = static_cast<Eigen::Index>(2 * e);
    const double k = m.kappa[e], a = m.a[e];
    prior(i, i) = neumann_edge_cov(k, a, m.tau, len, 0.0, 0.0);
    prior(i + 1, i + 1) = neumann_edge_cov(k, a, m.tau, len, len, len);
    prior(i, i + 1) = prior(i + 1, i) = neumann_edge_cov(k, a, m.tau, len, 0.0, len);
  }
  return prior;
}

Eigen::MatrixXd condition_on_constraints(const Eigen::MatrixXd& prior, const Eigen::MatrixXd& k) {
  if (k.cols() != prior.rows()) throw ValidationError("constraint matrix has the wrong number of columns");
  if (k.rows() == 0) return prior;
  const Eigen::MatrixXd kp = k * prior;
  const Eigen::MatrixXd s = kp * k.transpose();
  if (!s.allFinite()) throw ConditioningError("constraint covariance is not finite");

  Eigen::MatrixXd gain;
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  bool full_rank = llt.info() == Eigen::Success;
  if (full_rank) {
    es.compute(s, Eigen::EigenvaluesOnly);
    full_rank = es.eigenvalues()(0) > 1e-12 * es.eigenvalues().maxCoeff();
  }
  if (full_rank) {
    gain = llt.solve(kp);
  } else {
    es.compute(s);
    const double top = es.eigenvalues().maxCoeff();
    if (!(top > 0.0)) throw ConditioningError("constraint covariance K Sigma K^T vanishes");
    Eigen::VectorXd inv = es.eigenvalues();
    for (Eigen::Index i = 0; i < inv.size(); ++i) inv(i) = inv(i) > 1e-12 * top ? 1.0 / inv(i) : 0.0;
    gain = es.eigenvectors() * inv.asDiagonal() * (es.eigenvectors().transpose() * kp);
  }
  Eigen::MatrixXd post = prior - kp.transpose() * gain;
  return 0.5 * (post + post.transpose());
}

ExactField::ExactField(MetricGraph g, FieldModel m)
    : ExactField(g, std::move(m), continuity_constraints(g)) {
  // All ends meeting at a vertex carry one value; copy the representative so
  // that continuity holds exactly rather than to rounding.
  for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) {
    const auto& inc = graph_.incidences(v);
    const auto rep = static_cast<Eigen::Index>(endpoint_slot(inc.front().edge, inc.front().at_end));
    for (std::size_t k = 1; k < inc.size(); ++k) {
      const auto slot = static_cast<Eigen::Index>(endpoint_slot(inc[k].edge, inc[k].at_end));
      endpoint_cov_.row(slot) = endpoint_cov_.row(rep);
      endpoint_cov_.col(slot) = endpoint_cov_.col(rep);
    }
  }
}

ExactField::ExactField(MetricGraph g, FieldModel m, const Eigen::MatrixXd& constraints)
    : graph_(std::move(g)), model_(std::move(m)) {
  model_.validate(graph_);
  if (model_.alpha != 1.0) {
    throw RouteToSpectralError("exact construction requires alpha = 1; use the spectral route for alpha = " +
                               std::to_string(model_.alpha));
  }
  bases_.reserve(graph_.edge_count());
  for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
    bases_.emplace_back(model_.kappa[e], model_.a[e], graph_.length(e));
  }
  endpoint_cov_ = condition_on_constraints(endpoint_prior(graph_, model_), constraints);
}

double ExactField::boundary_part(const PointOnGraph& p, const PointOnGraph& q) const {
  const auto i = static_cast<Eigen::Index>(2 * p.edge);
  const auto j = static_cast<Eigen::Index>(2 * q.edge);
  const Eigen::Vector2d gp = bases_.at(p.edge)(p.t);
  const Eigen::Vector2d gq = bases_.at(q.edge)(q.t);
  return gp.dot(endpoint_cov_.block<2, 2>(i, j) * gq);
}

double ExactField::bridge_part(const PointOnGraph& p, const PointOnGraph& q) const {
  if (p.edge != q.edge) return 0.0;
  const EdgeIndex e = p.edge;
  const double len = graph_.length(e);
  if (p.t <= 0.0 || p.t >= len || q.t <= 0.0 || q.t >= len) return 0.0;
  const double k = model_.kappa[e], a = model_.a[e];
  auto n = [&](double x, double y) { return neumann_edge_cov(k, a, model_.tau, len, x, y); };
  Eigen::Matrix2d ends;
  ends << n(0, 0), n(0, len), n(len, 0), n(len, len);
  const Eigen::Vector2d ns(n(p.t, 0), n(p.t, len));
  const Eigen::Vector2d nt(n(0, q.t), n(len, q.t));
  return n(p.t, q.t) - ns.dot(ends.llt().solve(nt));
}

double ExactField::covariance(const PointOnGraph& p, const PointOnGraph& q) const {
  return boundary_part(p, q) + bridge_part(p, q);
}

Eigen::MatrixXd ExactField::cross(std::span<const PointOnGraph> a, std::span<const PointOnGraph> b) const {
  Eigen::MatrixXd out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = covariance(a[i], b[j]);
    }
  }
  return out;
}

CovMatrix ExactField::cov(std::span<const PointOnGraph> pts) const {
  const auto n = static_cast<Eigen::Index>(pts.size());
  CovMatrix out;
  out.provenance = Provenance::kExact;
  out.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      out.values(i, j) = out.values(j, i) =
          covariance(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    }
  }
  out.min_eigenvalue = min_eigenvalue(out.values);
  return out;
}

Eigen::MatrixXd ExactField::vertex_cov() const {
  std::vector<std::size_t> reps;
  for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) {
    const auto& first = graph_.incidences(v).front();
    reps.push_back(endpoint_slot(first.edge, first.at_end));
  }
  return submatrix(endpoint_cov_, reps, reps);
}

CovMatrix vertex_field_cov(const MetricGraph& g, const FieldModel& m) {
  const ExactField field(g, m);
  CovMatrix out;
  out.provenance = Provenance::kExact;
  out.values = field.vertex_cov();
  out.min_eigenvalue = min_eigenvalue(out.values);
  return out;
}

CovMatrix full_cov(const MetricGraph& g, const FieldModel& m, std::span<const PointOnGraph> pts) {
  return ExactField(g, m).cov(pts);
}

Eigen::MatrixXd sample(const MetricGraph& g, const FieldModel& m, std::span<const PointOnGraph> pts,
                       std::size_t n, std::uint64_t seed) {
  const auto dim = static_cast<Eigen::Index>(pts.size());
  if (n == 0) return Eigen::MatrixXd(0, dim);
  // Points naming the same location are drawn once so that they agree exactly.
  std::vector<PointOnGraph> unique;
  std::vector<std::size_t> slot(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto vi = g.vertex_at(pts[i]);
    std::size_t k = 0;
    for (; k < unique.size(); ++k) {
      if (unique[k] == pts[i]) break;
      if (vi && g.vertex_at(unique[k]) == vi) break;
    }
    if (k == unique.size()) unique.push_back(pts[i]);
    slot[i] = k;
  }
  const CovMatrix c = full_cov(g, m, unique);
  const Eigen::MatrixXd draws = draw_replicates(psd_sqrt(c.values), n, seed);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), dim);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = draws.col(static_cast<Eigen::Index>(slot[i]));
  }
  return out;
}

double markov_check(const Eigen::MatrixXd& c, std::span<const std::size_t> a, std::span<const std::size_t> b,
                    std::span<const std::size_t> s) {
  const Eigen::MatrixXd cond = conditional_cross_cov(c, a, b, s);
  return cond.size() == 0 ? 0.0 : cond.cwiseAbs().maxCoeff();
}

namespace {

double flux_residual(const MetricGraph& g, const std::vector<double>* weights, const CovarianceFunction& rho,
                     VertexIndex v, const PointOnGraph& probe, double h) {
  if (!(h > 0.0)) throw ValidationError("finite-difference spacing must be positive");
  if (v >= g.vertex_count()) throw ValidationError("vertex out of range");
  if (g.vertex_at(probe) == v) throw ValidationError("probe point must not sit at the vertex");

  double sum = 0.0;
  for (const auto& inc : g.incidences(v)) {
    const double len = g.length(inc.edge);
    if (2.0 * h >= len) throw ValidationError("mesh too coarse: edge shorter than the difference stencil");
    if (probe.edge == inc.edge) {
      const double from_v = inc.at_end ? len - probe.t : probe.t;
      if (from_v <= 2.0 * h) throw ValidationError("mesh too coarse: probe inside the difference stencil");
    }
    auto at = [&](int k) {
      const double d = k * h;
      return rho(PointOnGraph{inc.edge, inc.at_end ? len - d : d}, probe);
    };
    const double w = weights ? (*weights)[inc.edge] : 1.0;
    sum += w * (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  }
  return std::abs(sum);
}

}  // namespace

double kirchhoff_residual(const MetricGraph& g, const CovarianceFunction& rho, VertexIndex v,
                          const PointOnGraph& probe, double h) {
  return flux_residual(g, nullptr, rho, v, probe, h);
}

double kirchhoff_residual(const MetricGraph& g, const FieldModel& m, const CovarianceFunction& rho, VertexIndex v,
                          const PointOnGraph& probe, double h) {
  m.validate(g);
  return flux_residual(g, &m.a, rho, v, probe, h);
}

}  // namespace mgfield
