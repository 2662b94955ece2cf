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

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "spusim/types.hpp"

namespace spusim {

struct Entry {
    std::size_t row;
    std::size_t col;
    cplx amp;
};

/**
 * @brief Square complex sparse matrix in row-grouped coordinate form.
 *
 * Entries are stored sorted by (row, col) with no duplicates and no
 * amplitude below the drop tolerance. Instances are immutable after
 * construction and safe to share across threads.
 */
class SparseMatrix {
  public:
    SparseMatrix() = default;
    explicit SparseMatrix(std::size_t dim);

    /// Builds from triplets; throws on duplicate coordinates or indices
    /// outside [0, dim). Amplitudes below the drop tolerance are discarded.
    static SparseMatrix from_entries(std::size_t dim, std::vector<Entry> entries);
    static SparseMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    /// Entries of row i, sorted by column.
    std::span<const Entry> row(std::size_t i) const;

    /// Element lookup by binary search within the row; zero when absent.
    cplx at(std::size_t i, std::size_t j) const;

    SparseMatrix adjoint() const;

    std::size_t max_row_nnz() const;
    std::size_t max_col_nnz() const;
    double frobenius_norm() const;

  private:
    std::size_t dim_ = 0;
    std::vector<Entry> entries_;
    std::vector<std::size_t> row_start_;

    void index_rows();
};

/// Accumulates triplets, summing duplicates; build() drops entries below
/// the drop tolerance and produces a valid SparseMatrix.
class SparseBuilder {
  public:
    explicit SparseBuilder(std::size_t dim) : dim_(dim) {}

    void add(std::size_t row, std::size_t col, cplx amp);
    SparseMatrix build();

    std::size_t dim() const { return dim_; }

  private:
    std::size_t dim_;
    std::vector<Entry> entries_;
};

/**
 * @brief Procedural row access: index -> nonzero (column, amplitude) pairs.
 *
 * The callable must be deterministic and return distinct columns sorted
 * ascending.
 */
struct RowOracle {
    std::size_t dim = 0;
    std::function<std::vector<std::pair<std::size_t, cplx>>(std::size_t)> row_fn;
};

struct UnitaryReport {
    bool is_unitary = false;
    double max_col_defect = 0.0;
    double max_row_defect = 0.0;
};

/// Nonzero entries of row i as (column, amplitude) pairs, sorted by column.
std::vector<std::pair<std::size_t, cplx>> row_nonzeros(const SparseMatrix& m, std::size_t i);
std::vector<std::pair<std::size_t, cplx>> row_nonzeros(const RowOracle& oracle, std::size_t i);

/// Row oracle backed by the materialized matrix.
RowOracle as_row_oracle(const SparseMatrix& m);

std::vector<cplx> matvec(const SparseMatrix& m, const std::vector<cplx>& v);
std::vector<cplx> matvec(const RowOracle& oracle, const std::vector<cplx>& v);

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Column and row Gram defects: max | ||col||^2 - 1 | together with the
/// largest off-diagonal |<col_i, col_j>|, and the same over rows.
UnitaryReport check_unitary(const SparseMatrix& m, double tol);

/// Frobenius norm of (m - I); upper bound on the spectral norm of the same.
double frobenius_distance_to_identity(const SparseMatrix& m);

} // namespace spusim
