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

#include <stdexcept>
#include <string>

namespace mgfield {

/// Bad input: malformed graphs, out-of-range parameters, unsupported
/// graph/metric combinations. The CLI maps these to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GraphErrorKind {
  kEmpty,
  kNonPositiveLength,
  kDanglingEndpoint,
  kDisconnected,
  kIsolatedVertex,
  kDuplicateEdgeId,
  kUnknownEdge,
  kBadJoin,
  kBadPoint,
  kBadCanonical,
};

class GraphError : public ValidationError {
 public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : ValidationError(what), kind_(kind) {}
  GraphErrorKind kind() const noexcept { return kind_; }

 private:
  GraphErrorKind kind_;
};

/// Operation requires a graph class the input does not belong to, e.g. the
/// resistance metric on a graph without Euclidean edges.
class UnsupportedGraphError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Exact construction is only available for alpha == 1.
class RouteToSpectralError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical breakdown: singular systems, non-PSD matrices. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mgfield
