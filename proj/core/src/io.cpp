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

#include "mgfield/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mgfield/errors.hpp"

namespace mgfield::io {
namespace {

using nlohmann::json;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  // Underflow to a subnormal is fine; overflow is not.
  return end == s.c_str() + s.size() && !(errno == ERANGE && std::isinf(out));
}

bool looks_numeric(const std::string& s) {
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return !s.empty() && end == s.c_str() + s.size();
}

double number(const std::string& s, std::size_t row) {
  double x = 0.0;
  if (!parse_number(s, x)) {
    throw ValidationError("row " + std::to_string(row) + ": '" + s + "' is not a number");
  }
  return x;
}

void require_fields(const std::vector<std::string>& row, std::size_t n, std::size_t index) {
  if (row.size() != n) {
    throw ValidationError("row " + std::to_string(index) + ": expected " + std::to_string(n) + " fields, got " +
                          std::to_string(row.size()));
  }
}

}  // namespace

GraphSpec parse_graph_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
  try {
    GraphSpec spec;
    const auto vertices = j.at("vertices").get<long long>();
    if (vertices < 0) throw ValidationError("graph JSON: negative vertex count");
    spec.vertex_count = static_cast<std::size_t>(vertices);
    for (const auto& e : j.at("edges")) {
      const auto u = e.at("u").get<long long>();
      const auto v = e.at("v").get<long long>();
      if (u < 0 || v < 0) {
        throw GraphError(GraphErrorKind::kDanglingEndpoint, "graph JSON: negative vertex index");
      }
      spec.edges.push_back({e.value("id", std::string{}), static_cast<VertexIndex>(u), static_cast<VertexIndex>(v),
                            e.at("length").get<double>()});
    }
    return spec;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
}

MetricGraph parse_graph(std::string_view json_text) { return MetricGraph::build(parse_graph_spec(json_text)); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MetricGraph read_graph(const std::filesystem::path& path) { return parse_graph(read_text(path)); }

std::string graph_to_json(const MetricGraph& g) {
  json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = json::array();
  for (const auto& e : g.edges()) {
    j["edges"].push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"length", e.length}});
  }
  return j.dump(2);
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (line.back() == ',') fields.emplace_back();
    if (first && !looks_numeric(fields.back())) {
      first = false;
      continue;
    }
    first = false;
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::vector<PointOnGraph> read_points(const MetricGraph& g, std::istream& in) {
  std::vector<PointOnGraph> pts;
  const auto rows = read_csv_rows(in);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_fields(rows[i], 2, i);
    pts.push_back(g.point(rows[i][0], number(rows[i][1], i)));
  }
  return pts;
}

std::pair<std::vector<PointOnGraph>, Eigen::VectorXd> read_observations(const MetricGraph& g, std::istream& in) {
  const auto rows = read_csv_rows(in);
  std::vector<PointOnGraph> pts;
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_fields(rows[i], 3, i);
    pts.push_back(g.point(rows[i][0], number(rows[i][1], i)));
    y(static_cast<Eigen::Index>(i)) = number(rows[i][2], i);
  }
  return {std::move(pts), std::move(y)};
}

std::vector<std::pair<PointOnGraph, PointOnGraph>> read_pairs(const MetricGraph& g, std::istream& in) {
  std::vector<std::pair<PointOnGraph, PointOnGraph>> out;
  const auto rows = read_csv_rows(in);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_fields(rows[i], 4, i);
    out.emplace_back(g.point(rows[i][0], number(rows[i][1], i)), g.point(rows[i][2], number(rows[i][3], i)));
  }
  return out;
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  const auto rows = read_csv_rows(in);
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_fields(rows[i], cols, i);
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(rows[i][j], i);
    }
  }
  return m;
}

std::string format_double(double x) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::setprecision(17) << x;
  return ss.str();
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace mgfield::io
