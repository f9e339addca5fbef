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
#include <random>

#include <Eigen/Core>

namespace mgfield {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the independent stream for replicate `index` under `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Standard normal draws from one substream. Deterministic for a given
/// (seed, index) on a given build.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t index) : engine_(substream_seed(seed, index)) {}

  double next() { return dist_(engine_); }
  Eigen::VectorXd vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_;
};

/// n replicates (rows) of N(0, R R^T) given a square-root factor R; replicate r
/// draws from substream r.
Eigen::MatrixXd draw_replicates(const Eigen::MatrixXd& factor, std::size_t n, std::uint64_t seed);

}  // namespace mgfield
