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

#include "mgfield/inference.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "mgfield/errors.hpp"
#include "mgfield/metrics.hpp"

namespace mgfield {
namespace {

Eigen::MatrixXd observation_cov(const CovarianceSource& source, std::span<const PointOnGraph> obs,
                                const Eigen::VectorXd& y, double noise) {
  if (!(noise >= 0.0)) throw ValidationError("noise variance must be nonnegative");
  if (static_cast<std::size_t>(y.size()) != obs.size()) {
    throw ValidationError("observation values and points differ in length");
  }
  if (noise == 0.0) {
    for (std::size_t i = 0; i < obs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (obs[i] == obs[j]) {
          throw ValidationError("repeated observation point with zero noise makes the system singular");
        }
      }
    }
  }
  Eigen::MatrixXd c = source(obs, obs);
  if (noise == 0.0) {
    // The same vertex reached through different edges shows up as equal rows.
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        if (c.row(i) == c.row(j)) {
          throw ValidationError("observations " + std::to_string(j) + " and " + std::to_string(i) +
                                " coincide; zero noise makes the system singular");
        }
      }
    }
  }
  c.diagonal().array() += noise;
  return c;
}

double loglik_from(const SpdFactor& f, const Eigen::VectorXd& y) {
  const double quad = y.dot(f.llt.solve(y));
  return -0.5 * (quad + f.log_det() + static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi));
}

}  // namespace

CovarianceSource exact_source(ExactField field) {
  return [field = std::move(field)](std::span<const PointOnGraph> a, std::span<const PointOnGraph> b) {
    return field.cross(a, b);
  };
}

CovarianceSource isotropic_source(MetricGraph g, IsotropicModel model) {
  std::optional<ResistanceStructure> rs;
  if (model.metric == MetricKind::kResistance) rs = resistance_structure(g);
  return [g = std::move(g), model = std::move(model), rs = std::move(rs)](std::span<const PointOnGraph> a,
                                                                          std::span<const PointOnGraph> b) {
    Eigen::MatrixXd out(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double d = rs ? resistance_distance(g, *rs, a[i], b[j]) : geodesic_distance(g, a[i], b[j]);
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate(model, d);
      }
    }
    return out;
  };
}

CovarianceSource spectral_source(DiscreteOperator op, double alpha, double tau, std::size_t truncation) {
  if (!(alpha > 0.5)) throw ValidationError("no field exists for alpha <= 1/2");
  if (!(tau > 0.0)) throw ValidationError("tau must be positive");
  const std::size_t k = truncation == 0 ? op.dof_count() : truncation;
  if (k > op.dof_count()) throw ValidationError("truncation exceeds the available eigenpairs");
  const Eigen::VectorXd sqrt_weights =
      op.eigenvalues().head(static_cast<Eigen::Index>(k)).array().pow(-0.5 * alpha) / tau;
  Eigen::MatrixXd basis = op.eigenvectors().leftCols(static_cast<Eigen::Index>(k)) * sqrt_weights.asDiagonal();
  return [op = std::move(op), basis = std::move(basis)](std::span<const PointOnGraph> a,
                                                        std::span<const PointOnGraph> b) {
    const Eigen::MatrixXd pa = op.interpolation_matrix(a) * basis;
    const Eigen::MatrixXd pb = op.interpolation_matrix(b) * basis;
    return Eigen::MatrixXd(pa * pb.transpose());
  };
}

KrigingResult krige(const CovarianceSource& source, std::span<const PointOnGraph> obs, const Eigen::VectorXd& y,
                    double noise, std::span<const PointOnGraph> pred) {
  const Eigen::MatrixXd c_oo = observation_cov(source, obs, y, noise);
  const SpdFactor f = factor_spd(c_oo);
  const Eigen::MatrixXd c_po = source(pred, obs);
  const Eigen::MatrixXd c_pp = source(pred, pred);

  KrigingResult r;
  r.jitter = f.jitter;
  r.mean = c_po * f.llt.solve(y);
  r.covariance = c_pp - c_po * f.llt.solve(c_po.transpose());
  r.covariance = 0.5 * (r.covariance + r.covariance.transpose()).eval();
  r.log_likelihood = loglik_from(f, y);
  return r;
}

double loglik(const CovarianceSource& source, std::span<const PointOnGraph> obs, const Eigen::VectorXd& y,
              double noise) {
  return loglik_from(factor_spd(observation_cov(source, obs, y, noise)), y);
}

}  // namespace mgfield
