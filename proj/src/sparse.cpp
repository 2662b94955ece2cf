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

#include "spusim/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace spusim {

namespace {

bool entry_order(const Entry& a, const Entry& b) {
    if (a.row != b.row) return a.row < b.row;
    return a.col < b.col;
}

} // namespace

SparseMatrix::SparseMatrix(std::size_t dim) : dim_(dim), row_start_(dim + 1, 0) {}

SparseMatrix SparseMatrix::from_entries(std::size_t dim, std::vector<Entry> entries) {
    for (const Entry& e : entries) {
        if (e.row >= dim || e.col >= dim) {
            throw std::out_of_range("sparse entry (" + std::to_string(e.row) + ", " +
                                    std::to_string(e.col) + ") outside dimension " +
                                    std::to_string(dim));
        }
    }
    std::erase_if(entries, [](const Entry& e) { return std::abs(e.amp) < kDropTol; });
    std::sort(entries.begin(), entries.end(), entry_order);
    for (std::size_t k = 1; k < entries.size(); ++k) {
        if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
            throw std::invalid_argument("duplicate sparse entry at (" +
                                        std::to_string(entries[k].row) + ", " +
                                        std::to_string(entries[k].col) + ")");
        }
    }
    SparseMatrix m;
    m.dim_ = dim;
    m.entries_ = std::move(entries);
    m.index_rows();
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t dim) {
    std::vector<Entry> entries;
    entries.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) entries.push_back({i, i, cplx(1.0, 0.0)});
    return from_entries(dim, std::move(entries));
}

void SparseMatrix::index_rows() {
    row_start_.assign(dim_ + 1, 0);
    for (const Entry& e : entries_) ++row_start_[e.row + 1];
    for (std::size_t i = 0; i < dim_; ++i) row_start_[i + 1] += row_start_[i];
}

std::span<const Entry> SparseMatrix::row(std::size_t i) const {
    if (i >= dim_) {
        throw std::out_of_range("row " + std::to_string(i) + " outside dimension " +
                                std::to_string(dim_));
    }
    return {entries_.data() + row_start_[i], row_start_[i + 1] - row_start_[i]};
}

cplx SparseMatrix::at(std::size_t i, std::size_t j) const {
    auto r = row(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const Entry& e, std::size_t col) { return e.col < col; });
    if (it != r.end() && it->col == j) return it->amp;
    return cplx(0.0, 0.0);
}

SparseMatrix SparseMatrix::adjoint() const {
    std::vector<Entry> flipped;
    flipped.reserve(entries_.size());
    for (const Entry& e : entries_) flipped.push_back({e.col, e.row, std::conj(e.amp)});
    return from_entries(dim_, std::move(flipped));
}

std::size_t SparseMatrix::max_row_nnz() const {
    std::size_t best = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        best = std::max(best, row_start_[i + 1] - row_start_[i]);
    }
    return best;
}

std::size_t SparseMatrix::max_col_nnz() const {
    std::vector<std::size_t> counts(dim_, 0);
    for (const Entry& e : entries_) ++counts[e.col];
    std::size_t best = 0;
    for (std::size_t c : counts) best = std::max(best, c);
    return best;
}

double SparseMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const Entry& e : entries_) sum += std::norm(e.amp);
    return std::sqrt(sum);
}

void SparseBuilder::add(std::size_t row, std::size_t col, cplx amp) {
    if (row >= dim_ || col >= dim_) {
        throw std::out_of_range("sparse entry (" + std::to_string(row) + ", " +
                                std::to_string(col) + ") outside dimension " +
                                std::to_string(dim_));
    }
    entries_.push_back({row, col, amp});
}

SparseMatrix SparseBuilder::build() {
    std::sort(entries_.begin(), entries_.end(), entry_order);
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (const Entry& e : entries_) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
            merged.back().amp += e.amp;
        } else {
            merged.push_back(e);
        }
    }
    entries_.clear();
    return SparseMatrix::from_entries(dim_, std::move(merged));
}

std::vector<std::pair<std::size_t, cplx>> row_nonzeros(const SparseMatrix& m, std::size_t i) {
    std::vector<std::pair<std::size_t, cplx>> out;
    auto r = m.row(i);
    out.reserve(r.size());
    for (const Entry& e : r) out.emplace_back(e.col, e.amp);
    return out;
}

std::vector<std::pair<std::size_t, cplx>> row_nonzeros(const RowOracle& oracle, std::size_t i) {
    if (i >= oracle.dim) {
        throw std::out_of_range("row " + std::to_string(i) + " outside dimension " +
                                std::to_string(oracle.dim));
    }
    auto out = oracle.row_fn(i);
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k].first >= oracle.dim) {
            throw std::out_of_range("oracle row " + std::to_string(i) +
                                    " references column " + std::to_string(out[k].first) +
                                    " outside dimension " + std::to_string(oracle.dim));
        }
        if (k > 0 && out[k].first <= out[k - 1].first) {
            throw std::invalid_argument("oracle row " + std::to_string(i) +
                                        " columns not strictly ascending");
        }
    }
    return out;
}

RowOracle as_row_oracle(const SparseMatrix& m) {
    auto shared = std::make_shared<const SparseMatrix>(m);
    RowOracle oracle;
    oracle.dim = shared->dim();
    oracle.row_fn = [shared](std::size_t i) { return row_nonzeros(*shared, i); };
    return oracle;
}

std::vector<cplx> matvec(const SparseMatrix& m, const std::vector<cplx>& v) {
    if (v.size() != m.dim()) {
        throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                    " does not match dimension " + std::to_string(m.dim()));
    }
    std::vector<cplx> out(m.dim(), cplx(0.0, 0.0));
    for (const Entry& e : m.entries()) out[e.row] += e.amp * v[e.col];
    return out;
}

std::vector<cplx> matvec(const RowOracle& oracle, const std::vector<cplx>& v) {
    if (v.size() != oracle.dim) {
        throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                    " does not match dimension " + std::to_string(oracle.dim));
    }
    std::vector<cplx> out(oracle.dim, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < oracle.dim; ++i) {
        for (const auto& [col, amp] : oracle.row_fn(i)) out[i] += amp * v[col];
    }
    return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in sparse product: " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    SparseBuilder builder(a.dim());
    for (const Entry& ea : a.entries()) {
        for (const Entry& eb : b.row(ea.col)) {
            builder.add(ea.row, eb.col, ea.amp * eb.amp);
        }
    }
    return builder.build();
}

namespace {

// Gram defects of the columns of m, accumulated row by row. Row sorting by
// column keeps every accumulated pair in (low, high) order.
double column_gram_defect(const SparseMatrix& m) {
    const std::size_t dim = m.dim();
    std::vector<double> diag(dim, 0.0);
    std::unordered_map<std::uint64_t, cplx> off;
    for (std::size_t i = 0; i < dim; ++i) {
        auto r = m.row(i);
        for (std::size_t p = 0; p < r.size(); ++p) {
            diag[r[p].col] += std::norm(r[p].amp);
            for (std::size_t q = p + 1; q < r.size(); ++q) {
                const std::uint64_t key =
                    static_cast<std::uint64_t>(r[p].col) * dim + r[q].col;
                off[key] += std::conj(r[p].amp) * r[q].amp;
            }
        }
    }
    double defect = 0.0;
    for (double d : diag) defect = std::max(defect, std::abs(d - 1.0));
    for (const auto& [key, g] : off) defect = std::max(defect, std::abs(g));
    return defect;
}

} // namespace

UnitaryReport check_unitary(const SparseMatrix& m, double tol) {
    UnitaryReport report;
    report.max_col_defect = column_gram_defect(m);
    report.max_row_defect = column_gram_defect(m.adjoint());
    report.is_unitary = report.max_col_defect <= tol && report.max_row_defect <= tol;
    return report;
}

double frobenius_distance_to_identity(const SparseMatrix& m) {
    double sum = 0.0;
    std::size_t diag_seen = 0;
    for (const Entry& e : m.entries()) {
        if (e.row == e.col) {
            sum += std::norm(e.amp - cplx(1.0, 0.0));
            ++diag_seen;
        } else {
            sum += std::norm(e.amp);
        }
    }
    sum += static_cast<double>(m.dim() - diag_seen);
    return std::sqrt(sum);
}

} // namespace spusim
