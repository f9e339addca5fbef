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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mgfield/graph.hpp"

namespace mgfield::io {

/// {"vertices": N, "edges": [{"id": str, "u": int, "v": int, "length": float}]}
GraphSpec parse_graph_spec(std::string_view json_text);
MetricGraph parse_graph(std::string_view json_text);
MetricGraph read_graph(const std::filesystem::path& path);
std::string graph_to_json(const MetricGraph& g);

/// Read a whole text file; throws ValidationError when it cannot be opened.
std::string read_text(const std::filesystem::path& path);

/// CSV rows split into trimmed fields. Blank lines and '#' comments are
/// dropped, and so is a leading header row (any row whose last field is not
/// numeric).
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);

/// edge_id,t
std::vector<PointOnGraph> read_points(const MetricGraph& g, std::istream& in);
/// edge_id,t,y
std::pair<std::vector<PointOnGraph>, Eigen::VectorXd> read_observations(const MetricGraph& g, std::istream& in);
/// edge_p,t_p,edge_q,t_q
std::vector<std::pair<PointOnGraph, PointOnGraph>> read_pairs(const MetricGraph& g, std::istream& in);
/// Dense numeric matrix without header.
Eigen::MatrixXd read_matrix(std::istream& in);

/// 17 significant digits, so doubles round-trip exactly.
std::string format_double(double x);
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);

}  // namespace mgfield::io
