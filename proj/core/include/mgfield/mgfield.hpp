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

#include "mgfield/errors.hpp"
#include "mgfield/exact_markov.hpp"
#include "mgfield/graph.hpp"
#include "mgfield/inference.hpp"
#include "mgfield/io.hpp"
#include "mgfield/kernels.hpp"
#include "mgfield/linalg.hpp"
#include "mgfield/metrics.hpp"
#include "mgfield/random.hpp"
#include "mgfield/spectral.hpp"
