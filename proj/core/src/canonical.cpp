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

#include <array>
#include <cmath>
#include <string>

#include "mgfield/errors.hpp"
#include "mgfield/graph.hpp"

namespace mgfield {
namespace {

void require_length(double len, const char* what) {
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw GraphError(GraphErrorKind::kBadCanonical, std::string(what) + " must be a positive length");
  }
}

std::string edge_id(std::size_t i) { return "e" + std::to_string(i); }

}  // namespace

namespace canonical {

MetricGraph interval(double length) {
  require_length(length, "interval length");
  return MetricGraph::build({2, {{edge_id(0), 0, 1, length}}});
}

MetricGraph circle(double length, std::size_t n) {
  require_length(length, "circle perimeter");
  if (n == 0) throw GraphError(GraphErrorKind::kBadCanonical, "circle needs at least one vertex");
  GraphSpec spec{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    spec.edges.push_back({edge_id(i), i, (i + 1) % n, length / static_cast<double>(n)});
  }
  return MetricGraph::build(std::move(spec));
}

MetricGraph star(std::span<const double> lengths) {
  if (lengths.empty()) throw GraphError(GraphErrorKind::kBadCanonical, "star needs at least one edge");
  const std::size_t k = lengths.size();
  GraphSpec spec{k + 1, {}};
  for (std::size_t i = 0; i < k; ++i) {
    require_length(lengths[i], "star edge length");
    spec.edges.push_back({edge_id(i), i, k, lengths[i]});
  }
  return MetricGraph::build(std::move(spec));
}

MetricGraph figure_eight(double l1, double l2, std::size_t subdivisions) {
  const std::array parts{circle(l1, subdivisions), circle(l2, subdivisions)};
  const std::array<std::pair<VertexIndex, VertexIndex>, 1> joins{{{0, 0}}};
  return one_sum(parts, joins);
}

MetricGraph tadpole(double cycle_length, double edge_length, std::size_t subdivisions) {
  const std::array parts{circle(cycle_length, subdivisions), interval(edge_length)};
  const std::array<std::pair<VertexIndex, VertexIndex>, 1> joins{{{0, 0}}};
  return one_sum(parts, joins);
}

}  // namespace canonical

MetricGraph canonical_graph(const CanonicalKind& kind) {
  struct Visitor {
    MetricGraph operator()(const IntervalSpec& s) const { return canonical::interval(s.length); }
    MetricGraph operator()(const CircleSpec& s) const { return canonical::circle(s.length, s.n); }
    MetricGraph operator()(const StarSpec& s) const { return canonical::star(s.lengths); }
    MetricGraph operator()(const FigureEightSpec& s) const {
      return canonical::figure_eight(s.l1, s.l2, s.subdivisions);
    }
    MetricGraph operator()(const TadpoleSpec& s) const {
      return canonical::tadpole(s.cycle_length, s.edge_length, s.subdivisions);
    }
  };
  return std::visit(Visitor{}, kind);
}

}  // namespace mgfield
