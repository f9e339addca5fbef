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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mgfield/exact_markov.hpp"
#include "mgfield/graph.hpp"
#include "mgfield/linalg.hpp"

namespace mgfield {

/// Piecewise-linear finite element discretization of
/// L = kappa^2 - d/dx(a d/dx) on the graph, with one degree of freedom per
/// vertex shared by all incident edges. Continuity is built into the space
/// and the Kirchhoff flux condition is the natural condition of the bilinear
/// form, so no vertex terms are assembled.
class DiscreteOperator {
 public:
  /// Assemble M and A and solve A e = lambda M e for all pairs.
  static DiscreteOperator assemble(const MetricGraph& g, const FieldModel& m, double h);

  const NodeMesh& mesh() const noexcept { return mesh_; }
  std::size_t dof_count() const noexcept { return mesh_.nodes.size(); }
  const Eigen::MatrixXd& mass() const noexcept { return mass_; }
  const Eigen::MatrixXd& stiffness() const noexcept { return stiffness_; }
  /// Nondecreasing.
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  /// Columns are M-orthonormal eigenvectors.
  const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }
  double spacing() const noexcept { return h_; }
  std::uint64_t graph_hash() const noexcept { return graph_hash_; }

  /// Two (dof, weight) pairs interpolating a point from nodal values.
  std::array<std::pair<std::size_t, double>, 2> interpolation(const PointOnGraph& p) const;
  /// |pts| x dof_count interpolation matrix.
  Eigen::MatrixXd interpolation_matrix(std::span<const PointOnGraph> pts) const;

 private:
  DiscreteOperator() = default;

  NodeMesh mesh_;
  std::vector<double> edge_lengths_;
  Eigen::MatrixXd mass_;
  Eigen::MatrixXd stiffness_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  double h_ = 0.0;
  std::uint64_t graph_hash_ = 0;
};

inline DiscreteOperator assemble(const MetricGraph& g, const FieldModel& m, double h) {
  return DiscreteOperator::assemble(g, m, h);
}

struct SpectralCov {
  CovMatrix cov;
  std::size_t truncation = 0;
  /// lambda_K^{-(alpha - 1/2)}: size of the neglected tail up to a constant.
  double tail_estimate = 0.0;
};

/// tau^{-2} sum_{k <= K} lambda_k^{-alpha} e_k(x_i) e_k(x_j). truncation = 0
/// means all computed pairs. Throws ValidationError for alpha <= 1/2 or
/// truncation beyond the available pairs.
SpectralCov spectral_cov(const DiscreteOperator& op, double alpha, double tau, std::span<const PointOnGraph> pts,
                         std::size_t truncation = 0);

/// Karhunen-Loeve draws at the mesh nodes: n x dof_count, replicate r from
/// substream (seed, r).
Eigen::MatrixXd kl_sample(const DiscreteOperator& op, double alpha, double tau, std::size_t n, std::uint64_t seed,
                          std::size_t truncation = 0);

}  // namespace mgfield
