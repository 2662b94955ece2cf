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

#include "spusim/sparse.hpp"
#include "spusim/statevec.hpp"
#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Hermitian block embedding of a square matrix u.
 *
 * h places u in the top-right and u-dagger in the bottom-left block of a
 * doubled space; for unitary u the result squares to the identity and has
 * unit spectral norm, so its evolution has an exact closed form.
 */
struct Dilation {
    SparseMatrix h;
    std::size_t original_dim = 0;
};

/// Builds the Hermitian embedding of u. Throws std::invalid_argument when
/// u fails the unitarity check, since the involution property depends on it.
Dilation dilate(const SparseMatrix& u);

/// Hermitian embedding without the unitarity gate, for inputs that are
/// only approximately unitary. The involution defect is then the caller's
/// problem to track.
Dilation dilate_unchecked(const SparseMatrix& m);

/// Frobenius norm of (h * h - I), certifying (or refuting) involution.
double involution_defect(const SparseMatrix& h);

/**
 * @brief Closed-form evolution cos(theta) I - i sin(theta) h.
 *
 * Valid exactly when h squares to the identity; inputs with involution
 * defect above 1e-10 are rejected with std::invalid_argument.
 */
SparseMatrix analytic_evolution(const SparseMatrix& h, double theta);

/**
 * @brief Applies u to a state by evolving its Hermitian embedding.
 *
 * The state is injected into the second block, evolved for a quarter
 * period, and read back from the first block. The quarter period turns
 * block injection into u times the state, up to a fixed global phase that
 * is stripped unless keep_phase is set. Residual weight in the second
 * block above 1e-10 raises std::runtime_error.
 */
StateVector apply_via_dilation(const SparseMatrix& u, const StateVector& state,
                               bool keep_phase = false);

/// Embeds an n-dimensional state into block `block` (0 or 1) of the
/// doubled space.
std::vector<cplx> embed_state(const std::vector<cplx>& amps, int block);

/// Splits a doubled-space vector into its two blocks.
std::pair<std::vector<cplx>, std::vector<cplx>> split_blocks(const std::vector<cplx>& amps);

} // namespace spusim
