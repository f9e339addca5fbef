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
#include <span>
#include <string_view>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace mgfield {

enum class Provenance { kExact, kSpectral, kIsotropic, kExternal };

std::string_view to_string(Provenance p) noexcept;

/// Dense symmetric covariance over an ordered point list.
struct CovMatrix {
  Eigen::MatrixXd values;
  Provenance provenance = Provenance::kExternal;
  /// Smallest eigenvalue, filled by operations that report it.
  double min_eigenvalue = 0.0;

  Eigen::Index size() const noexcept { return values.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values(i, j); }
};

double min_eigenvalue(const Eigen::MatrixXd& c);

/// True when the smallest eigenvalue is >= -rel_tol * max(trace, 0).
bool is_psd(const Eigen::MatrixXd& c, double rel_tol = 1e-10);

/// Cholesky factor of c + jitter * I. Starts with no jitter and escalates
/// through 1e-12, 1e-11, ..., 1e-8 times trace/n when the factorization fails.
struct SpdFactor {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;

  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const { return llt.solve(rhs); }
  double log_det() const;
};

/// Throws NotPositiveDefiniteError if every jitter level fails.
SpdFactor factor_spd(const Eigen::MatrixXd& c);

/// Gather c(rows, cols).
Eigen::MatrixXd submatrix(const Eigen::MatrixXd& c, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols);

/// Conditional cross-covariance C_AB - C_AS C_SS^{-1} C_SB.
/// Throws ValidationError on overlapping sets and ConditioningError when C_SS
/// is numerically singular.
Eigen::MatrixXd conditional_cross_cov(const Eigen::MatrixXd& c, std::span<const std::size_t> a,
                                      std::span<const std::size_t> b, std::span<const std::size_t> s);

/// Square root factor R with R R^T = c, from Cholesky when possible and from
/// the clipped eigendecomposition otherwise. Throws NotPositiveDefiniteError
/// when c is not PSD within rel_tol.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& c, double rel_tol = 1e-10);

}  // namespace mgfield
