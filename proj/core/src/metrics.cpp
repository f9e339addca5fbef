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

#include "mgfield/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>

#include "mgfield/errors.hpp"

namespace mgfield {

double geodesic_distance(const MetricGraph& g, const PointOnGraph& p, const PointOnGraph& q) {
  const Edge& ep = g.edge(p.edge);
  const Edge& eq = g.edge(q.edge);
  const double p_ends[2] = {p.t, ep.length - p.t};
  const double q_ends[2] = {q.t, eq.length - q.t};
  const VertexIndex pv[2] = {ep.u, ep.v};
  const VertexIndex qv[2] = {eq.u, eq.v};

  double best = p.edge == q.edge ? std::abs(p.t - q.t) : std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      best = std::min(best, p_ends[i] + g.vertex_distance(pv[i], qv[j]) + q_ends[j]);
    }
  }
  return best;
}

ResistanceStructure resistance_structure(const MetricGraph& g, VertexIndex root) {
  if (!classify(g).euclidean_edges) {
    throw UnsupportedGraphError("resistance metric requires a graph with Euclidean edges");
  }
  if (root >= g.vertex_count()) throw ValidationError("root vertex " + std::to_string(root) + " out of range");

  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  ResistanceStructure rs;
  rs.root = root;
  rs.graph_hash = g.content_hash();
  rs.conductance = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u), v = static_cast<Eigen::Index>(e.v);
    rs.conductance(u, v) = rs.conductance(v, u) = 1.0 / g.vertex_distance(e.u, e.v);
  }
  rs.laplacian = -rs.conductance;
  rs.laplacian.diagonal() = rs.conductance.rowwise().sum();
  rs.laplacian(static_cast<Eigen::Index>(root), static_cast<Eigen::Index>(root)) += 1.0;

  Eigen::LLT<Eigen::MatrixXd> llt(rs.laplacian);
  if (llt.info() != Eigen::Success) throw NumericalError("resistance Laplacian is not positive definite");
  rs.vertex_cov = llt.solve(Eigen::MatrixXd::Identity(n, n));
  rs.vertex_cov = 0.5 * (rs.vertex_cov + rs.vertex_cov.transpose()).eval();
  return rs;
}

namespace {

double bridge(double s, double t, double len) { return std::min(s, t) - s * t / len; }

}  // namespace

double resistance_distance(const MetricGraph& g, const ResistanceStructure& rs, const PointOnGraph& p,
                           const PointOnGraph& q) {
  if (rs.graph_hash != g.content_hash()) throw ValidationError("resistance structure built for another graph");

  // Interpolation weights of Z(p) - Z(q) on the vertex vector.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  const Edge& ep = g.edge(p.edge);
  const Edge& eq = g.edge(q.edge);
  const double fp = p.t / ep.length, fq = q.t / eq.length;
  w(static_cast<Eigen::Index>(ep.u)) += 1.0 - fp;
  w(static_cast<Eigen::Index>(ep.v)) += fp;
  w(static_cast<Eigen::Index>(eq.u)) -= 1.0 - fq;
  w(static_cast<Eigen::Index>(eq.v)) -= fq;
  double var = w.dot(rs.vertex_cov * w);

  if (p.edge == q.edge) {
    var += bridge(p.t, p.t, ep.length) + bridge(q.t, q.t, ep.length) - 2.0 * bridge(p.t, q.t, ep.length);
  } else {
    var += bridge(p.t, p.t, ep.length) + bridge(q.t, q.t, eq.length);
  }
  return std::max(var, 0.0);
}

double resistance_distance(const MetricGraph& g, const PointOnGraph& p, const PointOnGraph& q) {
  return resistance_distance(g, resistance_structure(g), p, q);
}

}  // namespace mgfield
