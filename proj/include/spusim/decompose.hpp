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
#include <utility>
#include <vector>

#include "spusim/sparse.hpp"
#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Off-diagonal sparsity pattern of a Hermitian matrix as a graph.
 *
 * Vertices are indices; an edge {i, j} with i < j exists when the (i, j)
 * amplitude is a structural nonzero. Edges are stored lexicographically
 * sorted. The diagonal is tracked as a flag, not as edges.
 */
struct SparsityGraph {
    std::size_t dim = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool has_diagonal = false;
    std::size_t max_degree = 0;
};

/// Builds the sparsity graph of h; throws std::invalid_argument when h is
/// not Hermitian within 1e-12.
SparsityGraph build_graph(const SparseMatrix& h);

/**
 * @brief Proper edge coloring by greedy first-fit over lex-ordered edges.
 *
 * Returns one color per edge, aligned with graph.edges. Adjacent edges
 * never share a color, and at most 2 * max_degree - 1 colors are used.
 */
std::vector<std::size_t> edge_color(const SparsityGraph& graph);

/**
 * @brief Splits a Hermitian matrix into one-sparse Hermitian terms.
 *
 * One term per edge color in ascending color order, each carrying the
 * matched (i, j) and (j, i) amplitudes of its edges, followed by a single
 * diagonal term when the diagonal is nonzero. The terms sum to h exactly
 * and each has at most one nonzero per row and per column.
 */
std::vector<SparseMatrix> split_one_sparse(const SparseMatrix& h);

/**
 * @brief e^{-i theta term} for a one-sparse Hermitian term, in closed form.
 *
 * Rows untouched by the term get a unit diagonal, diagonal entries
 * exponentiate directly, and each off-diagonal pair becomes an exact
 * two-by-two block exponential. Throws std::invalid_argument when the
 * input is not one-sparse or not Hermitian within 1e-12.
 */
SparseMatrix exp_term(const SparseMatrix& term, double theta);

} // namespace spusim
