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

#include "mgfield/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_set>

#include "mgfield/errors.hpp"

namespace mgfield {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t x) { bytes(&x, sizeof x); }
  void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
  void str(const std::string& s) {
    u64(s.size());
    bytes(s.data(), s.size());
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

std::vector<double> dijkstra(std::size_t n, const std::vector<std::vector<std::pair<VertexIndex, double>>>& adj,
                             VertexIndex source) {
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, VertexIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (auto [w, len] : adj[v]) {
      if (d + len < dist[w]) {
        dist[w] = d + len;
        queue.emplace(dist[w], w);
      }
    }
  }
  return dist;
}

}  // namespace

MetricGraph MetricGraph::build(GraphSpec spec) {
  if (spec.vertex_count == 0 || spec.edges.empty()) {
    throw GraphError(GraphErrorKind::kEmpty, "graph needs at least one vertex and one edge");
  }
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    auto& e = spec.edges[i];
    if (e.id.empty()) e.id = "e" + std::to_string(i);
    if (e.u >= spec.vertex_count || e.v >= spec.vertex_count) {
      throw GraphError(GraphErrorKind::kDanglingEndpoint,
                       "edge '" + e.id + "' references a vertex outside [0, " +
                           std::to_string(spec.vertex_count) + ")");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw GraphError(GraphErrorKind::kNonPositiveLength, "edge '" + e.id + "' has non-positive length");
    }
    if (!ids.insert(e.id).second) {
      throw GraphError(GraphErrorKind::kDuplicateEdgeId, "duplicate edge id '" + e.id + "'");
    }
  }

  MetricGraph g;
  g.vertex_count_ = spec.vertex_count;
  g.edges_ = std::move(spec.edges);
  g.incidences_.assign(g.vertex_count_, {});
  std::vector<std::vector<std::pair<VertexIndex, double>>> adj(g.vertex_count_);
  for (EdgeIndex i = 0; i < g.edges_.size(); ++i) {
    const auto& e = g.edges_[i];
    g.incidences_[e.u].push_back({i, false});
    g.incidences_[e.v].push_back({i, true});
    if (e.u != e.v) {
      adj[e.u].emplace_back(e.v, e.length);
      adj[e.v].emplace_back(e.u, e.length);
    }
  }
  for (VertexIndex v = 0; v < g.vertex_count_; ++v) {
    if (g.incidences_[v].empty()) {
      throw GraphError(GraphErrorKind::kIsolatedVertex, "vertex " + std::to_string(v) + " has no incident edge");
    }
  }

  const std::size_t n = g.vertex_count_;
  g.vertex_distances_.resize(n * n);
  for (VertexIndex s = 0; s < n; ++s) {
    auto row = dijkstra(n, adj, s);
    if (s == 0 && std::any_of(row.begin(), row.end(), [](double d) { return d == kInf; })) {
      throw GraphError(GraphErrorKind::kDisconnected, "graph is not connected");
    }
    std::copy(row.begin(), row.end(), g.vertex_distances_.begin() + static_cast<std::ptrdiff_t>(s * n));
  }

  Fnv1a h;
  h.u64(n);
  for (const auto& e : g.edges_) {
    h.str(e.id);
    h.u64(e.u);
    h.u64(e.v);
    h.f64(e.length);
  }
  g.hash_ = h.value();
  return g;
}

double MetricGraph::total_length() const noexcept {
  return std::accumulate(edges_.begin(), edges_.end(), 0.0,
                         [](double acc, const Edge& e) { return acc + e.length; });
}

EdgeIndex MetricGraph::edge_index(std::string_view id) const {
  for (EdgeIndex i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id == id) return i;
  }
  throw GraphError(GraphErrorKind::kUnknownEdge, "unknown edge id '" + std::string(id) + "'");
}

PointOnGraph MetricGraph::point(EdgeIndex e, double t) const {
  if (e >= edges_.size()) {
    throw GraphError(GraphErrorKind::kUnknownEdge, "edge index " + std::to_string(e) + " out of range");
  }
  const double len = edges_[e].length;
  const double slack = 1e-12 * len;
  if (!std::isfinite(t) || t < -slack || t > len + slack) {
    throw GraphError(GraphErrorKind::kBadPoint, "arclength " + std::to_string(t) + " outside edge '" +
                                                     edges_[e].id + "' of length " + std::to_string(len));
  }
  if (t <= slack) t = 0.0;
  if (t >= len - slack) t = len;
  return {e, t};
}

PointOnGraph MetricGraph::vertex_point(VertexIndex v) const {
  const auto& inc = incidences_.at(v).front();
  return {inc.edge, inc.at_end ? edges_[inc.edge].length : 0.0};
}

std::optional<VertexIndex> MetricGraph::vertex_at(const PointOnGraph& p) const {
  const auto& e = edges_.at(p.edge);
  if (p.t == 0.0) return e.u;
  if (p.t == e.length) return e.v;
  return std::nullopt;
}

GraphClass classify(const MetricGraph& g) {
  GraphClass c;
  std::unordered_set<std::uint64_t> pairs;
  for (const auto& e : g.edges()) {
    if (e.u == e.v) {
      c.has_loops = true;
      continue;
    }
    auto lo = std::min(e.u, e.v), hi = std::max(e.u, e.v);
    if (!pairs.insert(static_cast<std::uint64_t>(lo) * g.vertex_count() + hi).second) c.has_multi_edges = true;
  }
  const bool simple = !c.has_loops && !c.has_multi_edges;
  bool consistent = simple;
  for (const auto& e : g.edges()) {
    if (!consistent) break;
    const double d = g.vertex_distance(e.u, e.v);
    if (std::abs(d - e.length) > 1e-12 * std::max(1.0, e.length)) consistent = false;
  }
  c.euclidean_edges = consistent;
  c.tree = simple && g.edge_count() + 1 == g.vertex_count();
  bool all_degree_two = true;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) all_degree_two = all_degree_two && g.degree(v) == 2;
  c.euclidean_cycle = c.euclidean_edges && all_degree_two && g.vertex_count() >= 3;
  return c;
}

MetricGraph one_sum(std::span<const MetricGraph> parts,
                    std::span<const std::pair<VertexIndex, VertexIndex>> joins) {
  if (parts.empty()) throw GraphError(GraphErrorKind::kBadJoin, "one_sum needs at least one part");
  if (joins.size() + 1 != parts.size()) {
    throw GraphError(GraphErrorKind::kBadJoin, "one_sum needs exactly one join per additional part");
  }
  GraphSpec acc{parts[0].vertex_count(), parts[0].edges()};
  std::unordered_set<std::string> ids;
  for (const auto& e : acc.edges) ids.insert(e.id);

  for (std::size_t k = 1; k < parts.size(); ++k) {
    const auto& part = parts[k];
    auto [into, from] = joins[k - 1];
    if (into >= acc.vertex_count || from >= part.vertex_count()) {
      throw GraphError(GraphErrorKind::kBadJoin, "join " + std::to_string(k - 1) + " references a missing vertex");
    }
    std::vector<VertexIndex> remap(part.vertex_count());
    for (VertexIndex v = 0; v < part.vertex_count(); ++v) {
      remap[v] = v == from ? into : acc.vertex_count++;
    }
    for (const auto& e : part.edges()) {
      Edge copy{e.id, remap[e.u], remap[e.v], e.length};
      if (ids.count(copy.id)) copy.id = "p" + std::to_string(k) + "." + e.id;
      if (!ids.insert(copy.id).second) {
        throw GraphError(GraphErrorKind::kDuplicateEdgeId, "cannot disambiguate edge id '" + e.id + "'");
      }
      acc.edges.push_back(std::move(copy));
    }
  }
  return MetricGraph::build(std::move(acc));
}

std::size_t segments_for(double length, double h) {
  if (!(h > 0.0)) throw ValidationError("mesh spacing must be positive");
  const double ratio = length / h;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio - 1e-9 * std::max(1.0, ratio))));
}

std::vector<PointOnGraph> mesh(const MetricGraph& g, double h) {
  std::vector<PointOnGraph> pts;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const double len = g.length(e);
    const std::size_t n = segments_for(len, h);
    for (std::size_t i = 0; i <= n; ++i) {
      pts.push_back({e, i == n ? len : len * static_cast<double>(i) / static_cast<double>(n)});
    }
  }
  return pts;
}

NodeMesh node_mesh(const MetricGraph& g, double h) {
  NodeMesh m;
  std::vector<std::size_t> vertex_node(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    vertex_node[v] = m.nodes.size();
    m.nodes.push_back(g.vertex_point(v));
  }
  m.edge_nodes.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const double len = g.length(e);
    const std::size_t n = segments_for(len, h);
    auto& ids = m.edge_nodes[e];
    ids.reserve(n + 1);
    ids.push_back(vertex_node[g.edge(e).u]);
    for (std::size_t i = 1; i < n; ++i) {
      ids.push_back(m.nodes.size());
      m.nodes.push_back({e, len * static_cast<double>(i) / static_cast<double>(n)});
    }
    ids.push_back(vertex_node[g.edge(e).v]);
  }
  return m;
}

}  // namespace mgfield
