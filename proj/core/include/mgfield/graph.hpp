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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mgfield {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
  std::string id;
  VertexIndex u = 0;  // endpoint at t = 0
  VertexIndex v = 0;  // endpoint at t = length
  double length = 0.0;
};

/// Unvalidated graph description, as read from JSON or produced by generators.
struct GraphSpec {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
};

/// A location on the graph: arclength t along an edge, measured from its u end.
struct PointOnGraph {
  EdgeIndex edge = 0;
  double t = 0.0;

  friend bool operator==(const PointOnGraph&, const PointOnGraph&) = default;
};

/// One end of an edge as seen from a vertex. `at_end` is false for the t = 0
/// end and true for the t = length end.
struct Incidence {
  EdgeIndex edge = 0;
  bool at_end = false;
};

struct GraphClass {
  bool euclidean_edges = false;
  bool tree = false;
  bool euclidean_cycle = false;
  bool has_loops = false;
  bool has_multi_edges = false;
};

/// Compact metric graph. Validated on construction and immutable afterwards;
/// all-pairs vertex distances are computed once at build time so every query
/// is a pure read.
class MetricGraph {
 public:
  /// Validates `spec`. Throws GraphError with a kind per failure class.
  static MetricGraph build(GraphSpec spec);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  double length(EdgeIndex e) const { return edges_.at(e).length; }
  double total_length() const noexcept;

  /// Throws GraphError(kUnknownEdge) if no edge carries `id`.
  EdgeIndex edge_index(std::string_view id) const;

  /// Incident edge ends in edge order (u end before v end for loops).
  const std::vector<Incidence>& incidences(VertexIndex v) const { return incidences_.at(v); }
  std::size_t degree(VertexIndex v) const { return incidences_.at(v).size(); }

  VertexIndex endpoint(EdgeIndex e, bool at_end) const {
    return at_end ? edges_.at(e).v : edges_.at(e).u;
  }

  /// Shortest-path distance between two vertices.
  double vertex_distance(VertexIndex a, VertexIndex b) const {
    return vertex_distances_.at(a * vertex_count_ + b);
  }

  /// Validated point; t within 1e-12 relative of an end is snapped to it.
  PointOnGraph point(EdgeIndex e, double t) const;
  PointOnGraph point(std::string_view edge_id, double t) const {
    return point(edge_index(edge_id), t);
  }
  /// Canonical point for a vertex: its first incident edge end.
  PointOnGraph vertex_point(VertexIndex v) const;
  /// Vertex identity of an endpoint point, if the point is one.
  std::optional<VertexIndex> vertex_at(const PointOnGraph& p) const;

  std::uint64_t content_hash() const noexcept { return hash_; }

 private:
  MetricGraph() = default;

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidences_;
  std::vector<double> vertex_distances_;
  std::uint64_t hash_ = 0;
};

inline MetricGraph build_graph(GraphSpec spec) { return MetricGraph::build(std::move(spec)); }

/// Euclidean-edge test: no loops, no multi-edges, and every edge length
/// equals the geodesic distance between its endpoints.
GraphClass classify(const MetricGraph& g);

/// Joins `parts` left to right. joins[i] identifies a vertex of the sum so
/// far with a vertex of parts[i + 1]. Edge ids that would collide are
/// prefixed with "p<k>.", k the part index.
MetricGraph one_sum(std::span<const MetricGraph> parts,
                    std::span<const std::pair<VertexIndex, VertexIndex>> joins);

/// Per-edge points at spacing <= h including both endpoints, ordered by edge
/// then t. Shared vertices appear once per incident edge end.
std::vector<PointOnGraph> mesh(const MetricGraph& g, double h);

/// Segments per edge used by mesh(); ceil(length / h) with rounding slack.
std::size_t segments_for(double length, double h);

/// Mesh with one node per vertex. edge_nodes[e][i] is the node index of the
/// i-th mesh point along edge e.
struct NodeMesh {
  std::vector<PointOnGraph> nodes;
  std::vector<std::vector<std::size_t>> edge_nodes;
};
NodeMesh node_mesh(const MetricGraph& g, double h);

namespace canonical {

MetricGraph interval(double length);
/// Circle of perimeter `length` split into n equal edges (n = 1 is a loop).
MetricGraph circle(double length, std::size_t n);
/// Leaves are vertices 0..k-1, centre is vertex k; edge i runs leaf i -> centre.
MetricGraph star(std::span<const double> lengths);
/// Two cycles of `subdivisions` edges each, joined at their vertex 0.
MetricGraph figure_eight(double l1, double l2, std::size_t subdivisions = 3);
/// Cycle of `subdivisions` edges with a pendant edge at cycle vertex 0.
MetricGraph tadpole(double cycle_length, double edge_length, std::size_t subdivisions = 3);

}  // namespace canonical

struct IntervalSpec { double length; };
struct CircleSpec { double length; std::size_t n; };
struct StarSpec { std::vector<double> lengths; };
struct FigureEightSpec { double l1; double l2; std::size_t subdivisions = 3; };
struct TadpoleSpec { double cycle_length; double edge_length; std::size_t subdivisions = 3; };
using CanonicalKind = std::variant<IntervalSpec, CircleSpec, StarSpec, FigureEightSpec, TadpoleSpec>;

MetricGraph canonical_graph(const CanonicalKind& kind);

}  // namespace mgfield
