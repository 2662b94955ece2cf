// Copyright 2026 The spusim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "spusim/sparse.hpp"
#include "spusim/statevec.hpp"
#include "spusim/trotter.hpp"
#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Writes m in Matrix Market coordinate complex general form.
 *
 * One-based indices, entries sorted by (row, col), amplitudes printed with
 * seventeen significant digits so a read-back reproduces the matrix exactly.
 */
void write_matrix_market(const SparseMatrix& m, const std::string& path);

/**
 * @brief Reads a Matrix Market coordinate file into a square sparse matrix.
 *
 * Accepts the complex, real, and integer fields (real and integer promote
 * to complex with zero imaginary part); only the general symmetry is
 * accepted. Malformed headers, non-square sizes, out-of-range indices, and
 * duplicate coordinates raise std::runtime_error naming the offending line.
 */
SparseMatrix read_matrix_market(const std::string& path);

/// State vector as JSON {"dim": n, "amps": [[re, im], ...]}. The reader
/// marks the state normalized when its two-norm is within 1e-10 of one.
void write_state(const StateVector& s, const std::string& path);
StateVector read_state(const std::string& path);

/**
 * @brief Factored evolution as a JSON manifest plus sibling factor files.
 *
 * The manifest records dim, t, order, r, epsilon, certified_bound, and the
 * slice's factor file names; each factor is written as its own Matrix
 * Market file named after the manifest stem. The reader resolves factor
 * paths relative to the manifest's directory and validates dimensions.
 */
void write_evolution(const FactoredEvolution& fe, const std::string& manifest_path);
FactoredEvolution read_evolution(const std::string& manifest_path);

} // namespace spusim
