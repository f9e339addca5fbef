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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mgfield::cli {

enum class Format { kCsv, kJson };

/// Parsed command line. Optional fields left empty fall back to an inline
/// JSON config, then to built-in defaults.
struct RunConfig {
  std::string subcommand;

  std::string graph_path;
  std::string config_path;
  std::optional<double> interval;
  std::vector<double> circle;
  std::vector<double> star;
  std::vector<double> figure_eight;
  std::vector<double> tadpole;
  std::size_t subdivisions = 3;

  std::vector<double> kappa;
  std::vector<double> a;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<double> mesh_h;
  std::optional<std::uint64_t> seed;
  std::size_t truncation = 0;

  std::string points_path;
  std::string pairs_path;
  std::string obs_path;
  std::string pred_path;
  std::string cov_path;
  double noise = 0.0;
  std::size_t replicates = 1;

  std::string source = "exact";
  std::string metric = "geodesic";
  std::string kernel = "exponential";
  double sigma2 = 1.0;
  std::optional<double> length;

  std::vector<std::size_t> set_a;
  std::vector<std::size_t> set_b;
  std::vector<std::size_t> set_s;

  bool eigenvalues = false;

  std::string demo;
  std::vector<double> demo_lengths;
  std::optional<double> kappa2;
  double sigma = 1.0;
  std::size_t grid = 1001;

  std::string out_path;
  Format format = Format::kCsv;
  bool format_set = false;
};

/// Executes one subcommand. Returns 0 on success, 2 on invalid input and 3
/// on numerical failure; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mgfield::cli
