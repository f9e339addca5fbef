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

#include "mgfield/random.hpp"

namespace mgfield {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

Eigen::VectorXd NormalStream::vector(Eigen::Index n) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = next();
  return z;
}

Eigen::MatrixXd draw_replicates(const Eigen::MatrixXd& factor, std::size_t n, std::uint64_t seed) {
  const Eigen::Index dim = factor.cols();
  Eigen::MatrixXd z(dim, static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    NormalStream stream(seed, r);
    z.col(static_cast<Eigen::Index>(r)) = stream.vector(dim);
  }
  return (factor * z).transpose();
}

}  // namespace mgfield
