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

#include <cstdint>

#include "spusim/dense.hpp"
#include "spusim/sparse.hpp"
#include "spusim/statevec.hpp"
#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Random unitary with at most max_per_line nonzeros per row and column.
 *
 * Starts from a phased permutation and applies rounds of disjoint two-level
 * rotations, each accepted only if every touched row and column stays within
 * the sparsity budget. The result is unitary to working precision and fully
 * determined by the seed. Requires max_per_line >= 1.
 */
SparseMatrix random_sparse_unitary(std::size_t dim, std::size_t max_per_line,
                                   std::uint64_t seed);

/// Haar-like dense unitary: Gaussian matrix orthonormalized column by
/// column with modified Gram-Schmidt. Deterministic per seed.
DenseMatrix random_dense_unitary(std::size_t dim, std::uint64_t seed);

/// Normalized state with independent Gaussian components.
StateVector random_state(std::size_t dim, std::uint64_t seed);

} // namespace spusim
