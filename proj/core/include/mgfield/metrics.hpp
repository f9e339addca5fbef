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

#include <cstdint>

#include <Eigen/Core>

#include "mgfield/graph.hpp"

namespace mgfield {

/// Length of the shortest path between two points. Equivalent to inserting
/// p and q as degree-2 vertices and running a shortest-path search: the
/// search only ever leaves an edge through its endpoints, so the distance is
/// the best endpoint combination, or the direct arc when both points share
/// an edge.
double geodesic_distance(const MetricGraph& g, const PointOnGraph& p, const PointOnGraph& q);

/// Vertex-level ingredients of the resistance metric on a graph with
/// Euclidean edges.
///
/// `laplacian` is the weighted graph Laplacian with conductances 1/length,
/// plus one on the diagonal entry of the root. It is strictly positive
/// definite, and its inverse `vertex_cov` is the covariance of the
/// vertex-level Gaussian vector from which the auxiliary process is
/// interpolated.
struct ResistanceStructure {
  VertexIndex root = 0;
  Eigen::MatrixXd conductance;
  Eigen::MatrixXd laplacian;
  Eigen::MatrixXd vertex_cov;
  std::uint64_t graph_hash = 0;
};

/// Throws UnsupportedGraphError unless classify(g).euclidean_edges.
ResistanceStructure resistance_structure(const MetricGraph& g, VertexIndex root = 0);

/// Variogram of the auxiliary process: linear interpolation of the vertex
/// vector along each edge plus an independent Brownian bridge per edge.
double resistance_distance(const MetricGraph& g, const ResistanceStructure& rs, const PointOnGraph& p,
                           const PointOnGraph& q);

/// Convenience overload; builds the structure rooted at vertex 0.
double resistance_distance(const MetricGraph& g, const PointOnGraph& p, const PointOnGraph& q);

}  // namespace mgfield
