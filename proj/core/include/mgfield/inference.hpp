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

#include <functional>
#include <span>

#include <Eigen/Core>

#include "mgfield/exact_markov.hpp"
#include "mgfield/graph.hpp"
#include "mgfield/kernels.hpp"
#include "mgfield/spectral.hpp"

namespace mgfield {

/// Cross-covariance builder: returns Cov(u(a_i), u(b_j)).
using CovarianceSource =
    std::function<Eigen::MatrixXd(std::span<const PointOnGraph>, std::span<const PointOnGraph>)>;

CovarianceSource exact_source(ExactField field);
CovarianceSource isotropic_source(MetricGraph g, IsotropicModel model);
/// Interpolates the truncated spectral covariance at arbitrary points.
CovarianceSource spectral_source(DiscreteOperator op, double alpha, double tau, std::size_t truncation = 0);

struct KrigingResult {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
  double log_likelihood = 0.0;
  /// Diagonal jitter that the factorization needed; 0 when none.
  double jitter = 0.0;
};

/// Gaussian conditioning of the prediction points on noisy observations
/// y = u(obs) + N(0, noise I). Throws ValidationError for negative noise or
/// repeated observation points with zero noise, NotPositiveDefiniteError when
/// the observation covariance cannot be factored.
KrigingResult krige(const CovarianceSource& source, std::span<const PointOnGraph> obs, const Eigen::VectorXd& y,
                    double noise, std::span<const PointOnGraph> pred);

/// -1/2 (y^T S^{-1} y + log det S + n log 2 pi), S = C_oo + noise I.
double loglik(const CovarianceSource& source, std::span<const PointOnGraph> obs, const Eigen::VectorXd& y,
              double noise);

}  // namespace mgfield
