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

#include "mgfield/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "mgfield/errors.hpp"

namespace mgfield {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::kExact: return "exact";
    case Provenance::kSpectral: return "spectral";
    case Provenance::kIsotropic: return "isotropic";
    case Provenance::kExternal: return "external";
  }
  return "unknown";
}

double min_eigenvalue(const Eigen::MatrixXd& c) {
  if (c.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Eigen::MatrixXd& c, double rel_tol) {
  if (c.size() == 0) return true;
  return min_eigenvalue(c) >= -rel_tol * std::max(c.trace(), 0.0);
}

double SpdFactor::log_det() const {
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

SpdFactor factor_spd(const Eigen::MatrixXd& c) {
  const Eigen::Index n = c.rows();
  SpdFactor f;
  f.llt.compute(c);
  if (f.llt.info() == Eigen::Success) return f;
  const double scale = n > 0 ? std::abs(c.trace()) / static_cast<double>(n) : 1.0;
  for (double level = 1e-12; level <= 1e-8 * 1.0001; level *= 10.0) {
    f.jitter = level * scale;
    f.llt.compute(c + f.jitter * Eigen::MatrixXd::Identity(n, n));
    if (f.llt.info() == Eigen::Success) return f;
  }
  throw NotPositiveDefiniteError("matrix is not positive definite even with jitter 1e-8 * trace/n");
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& c, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          c(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
    }
  }
  return out;
}

Eigen::MatrixXd conditional_cross_cov(const Eigen::MatrixXd& c, std::span<const std::size_t> a,
                                      std::span<const std::size_t> b, std::span<const std::size_t> s) {
  std::unordered_set<std::size_t> seen;
  for (auto set : {a, b, s}) {
    for (auto i : set) {
      if (i >= static_cast<std::size_t>(c.rows())) {
        throw ValidationError("index " + std::to_string(i) + " outside covariance matrix");
      }
      if (!seen.insert(i).second) throw ValidationError("index sets must be disjoint");
    }
  }
  Eigen::MatrixXd cab = submatrix(c, a, b);
  if (s.empty()) return cab;
  Eigen::MatrixXd css = submatrix(c, s, s);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(css);
  const double scale = css.diagonal().cwiseAbs().maxCoeff();
  const auto d = ldlt.vectorD();
  if (ldlt.info() != Eigen::Success || !(scale > 0.0) || d.minCoeff() <= 1e-13 * scale) {
    throw ConditioningError("conditioning block is numerically singular");
  }
  return cab - submatrix(c, a, s) * ldlt.solve(submatrix(c, s, b));
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& c, double rel_tol) {
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  const double floor = -rel_tol * std::max(c.trace(), 0.0);
  if (es.eigenvalues()(0) < floor) {
    throw NotPositiveDefiniteError("covariance has eigenvalue " + std::to_string(es.eigenvalues()(0)) +
                                   " below PSD tolerance");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace mgfield
