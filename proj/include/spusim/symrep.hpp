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

#include <cstddef>
#include <string>
#include <vector>

#include "spusim/sparse.hpp"
#include "spusim/types.hpp"

namespace spusim {

/// Standard filling of a partition shape: rows[i][j] holds a letter from
/// 1..n, increasing along rows and down columns.
struct Tableau {
    std::vector<std::vector<int>> rows;
};

/// Throws std::invalid_argument unless parts are positive and
/// non-increasing with at least one part.
void check_partition(const std::vector<std::size_t>& partition);

/// All standard fillings of the shape, sorted so that the tableau whose
/// largest differing letter sits in the lower row comes first.
std::vector<Tableau> tableau_basis(const std::vector<std::size_t>& partition);

/**
 * @brief Orthogonal matrix of the adjacent transposition (j, j+1).
 *
 * In the standard-filling basis the generator is built from axial
 * distances: letters in the same row give a +1 diagonal, the same column
 * -1, and the general case mixes a tableau with its letter-swapped
 * partner through a two-dimensional rotation. Rows carry at most two
 * nonzeros. Requires 1 <= j <= n - 1 for n the partition weight.
 */
SparseMatrix symrep_generator(const std::vector<std::size_t>& partition, std::size_t j);

struct SymrepReport {
    bool passed = false;
    double max_residual = 0.0;
    std::string detail;
};

/// Verifies the generator family: involutions, braid relation between
/// neighbours, commutation at distance two or more, unitarity, and the
/// two-nonzeros row budget, all at 1e-10. On failure the detail names the
/// offending relation with its generator indices and residual.
SymrepReport symrep_check(const std::vector<std::size_t>& partition);

} // namespace spusim
