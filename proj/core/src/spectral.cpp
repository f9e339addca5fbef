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

#include "mgfield/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "mgfield/errors.hpp"
#include "mgfield/random.hpp"

namespace mgfield {

DiscreteOperator DiscreteOperator::assemble(const MetricGraph& g, const FieldModel& m, double h) {
  m.validate(g);
  if (!(h > 0.0)) throw ValidationError("mesh spacing must be positive");

  DiscreteOperator op;
  op.h_ = h;
  op.graph_hash_ = g.content_hash();
  op.mesh_ = node_mesh(g, h);
  for (const auto& e : g.edges()) op.edge_lengths_.push_back(e.length);

  const auto n = static_cast<Eigen::Index>(op.mesh_.nodes.size());
  op.mass_ = Eigen::MatrixXd::Zero(n, n);
  op.stiffness_ = Eigen::MatrixXd::Zero(n, n);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& ids = op.mesh_.edge_nodes[e];
    const double he = g.length(e) / static_cast<double>(ids.size() - 1);
    const double k2 = m.kappa[e] * m.kappa[e];
    const double diff = m.a[e] / he;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      const auto p = static_cast<Eigen::Index>(ids[i]);
      const auto q = static_cast<Eigen::Index>(ids[i + 1]);
      const double md = he / 3.0, mo = he / 6.0;
      op.mass_(p, p) += md;
      op.mass_(q, q) += md;
      op.mass_(p, q) += mo;
      op.mass_(q, p) += mo;
      op.stiffness_(p, p) += diff + k2 * md;
      op.stiffness_(q, q) += diff + k2 * md;
      op.stiffness_(p, q) += -diff + k2 * mo;
      op.stiffness_(q, p) += -diff + k2 * mo;
    }
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(op.stiffness_, op.mass_);
  if (ges.info() != Eigen::Success) throw NumericalError("generalized eigensolver failed");
  op.eigenvalues_ = ges.eigenvalues();
  op.eigenvectors_ = ges.eigenvectors();
  return op;
}

std::array<std::pair<std::size_t, double>, 2> DiscreteOperator::interpolation(const PointOnGraph& p) const {
  const auto& ids = mesh_.edge_nodes.at(p.edge);
  const std::size_t segments = ids.size() - 1;
  const double he = edge_lengths_[p.edge] / static_cast<double>(segments);
  const double pos = p.t / he;
  const auto i = std::min<std::size_t>(segments - 1, static_cast<std::size_t>(std::max(0.0, std::floor(pos))));
  const double w = std::clamp(pos - static_cast<double>(i), 0.0, 1.0);
  return {{{ids[i], 1.0 - w}, {ids[i + 1], w}}};
}

Eigen::MatrixXd DiscreteOperator::interpolation_matrix(std::span<const PointOnGraph> pts) const {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pts.size()),
                                            static_cast<Eigen::Index>(dof_count()));
  for (std::size_t r = 0; r < pts.size(); ++r) {
    for (auto [dof, w] : interpolation(pts[r])) {
      p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(dof)) += w;
    }
  }
  return p;
}

namespace {

Eigen::Index checked_truncation(const DiscreteOperator& op, double alpha, double tau, std::size_t truncation) {
  if (!(alpha > 0.5)) throw ValidationError("no field exists for alpha <= 1/2");
  if (!(tau > 0.0)) throw ValidationError("tau must be positive");
  const std::size_t k = truncation == 0 ? op.dof_count() : truncation;
  if (k > op.dof_count()) {
    throw ValidationError("truncation " + std::to_string(k) + " exceeds the " + std::to_string(op.dof_count()) +
                          " available eigenpairs");
  }
  return static_cast<Eigen::Index>(k);
}

}  // namespace

SpectralCov spectral_cov(const DiscreteOperator& op, double alpha, double tau, std::span<const PointOnGraph> pts,
                         std::size_t truncation) {
  const Eigen::Index k = checked_truncation(op, alpha, tau, truncation);
  const Eigen::MatrixXd phi = op.interpolation_matrix(pts) * op.eigenvectors().leftCols(k);
  const Eigen::VectorXd weights = op.eigenvalues().head(k).array().pow(-alpha) / (tau * tau);

  SpectralCov out;
  out.truncation = static_cast<std::size_t>(k);
  out.tail_estimate = std::pow(op.eigenvalues()(k - 1), -(alpha - 0.5));
  out.cov.provenance = Provenance::kSpectral;
  out.cov.values = phi * weights.asDiagonal() * phi.transpose();
  out.cov.values = 0.5 * (out.cov.values + out.cov.values.transpose()).eval();
  out.cov.min_eigenvalue = min_eigenvalue(out.cov.values);
  return out;
}

Eigen::MatrixXd kl_sample(const DiscreteOperator& op, double alpha, double tau, std::size_t n, std::uint64_t seed,
                          std::size_t truncation) {
  const Eigen::Index k = checked_truncation(op, alpha, tau, truncation);
  const Eigen::VectorXd scale = op.eigenvalues().head(k).array().pow(-0.5 * alpha) / tau;
  const Eigen::MatrixXd factor = op.eigenvectors().leftCols(k) * scale.asDiagonal();
  return draw_replicates(factor, n, seed);
}

}  // namespace mgfield
