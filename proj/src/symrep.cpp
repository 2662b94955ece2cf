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

#include "spusim/symrep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "spusim/dense.hpp"

namespace spusim {

namespace {

struct CellPos {
    std::size_t row = 0;
    std::size_t col = 0;
};

/// Position of each letter, indexed 1..n.
std::vector<CellPos> letter_positions(const Tableau& t, std::size_t n) {
    std::vector<CellPos> pos(n + 1);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.rows[i].size(); ++j)
            pos[static_cast<std::size_t>(t.rows[i][j])] = {i, j};
    return pos;
}

/// Largest differing letter sits in the lower row first.
bool last_letter_less(const Tableau& a, const Tableau& b, std::size_t n) {
    const auto pa = letter_positions(a, n);
    const auto pb = letter_positions(b, n);
    for (std::size_t letter = n; letter >= 1; --letter) {
        if (pa[letter].row != pb[letter].row || pa[letter].col != pb[letter].col)
            return pa[letter].row > pb[letter].row;
    }
    return false;
}

void enumerate(const std::vector<std::size_t>& partition, std::vector<std::size_t>& fill,
               Tableau& current, int letter, int n, std::vector<Tableau>& out) {
    if (letter > n) {
        out.push_back(current);
        return;
    }
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (fill[i] >= partition[i]) continue;
        if (i > 0 && fill[i - 1] <= fill[i]) continue;
        current.rows[i].push_back(letter);
        ++fill[i];
        enumerate(partition, fill, current, letter + 1, n, out);
        --fill[i];
        current.rows[i].pop_back();
    }
}

/// col - row of the letter's cell.
long content_of(const CellPos& c) {
    return static_cast<long>(c.col) - static_cast<long>(c.row);
}

std::vector<int> flatten(const Tableau& t) {
    std::vector<int> flat;
    for (const auto& row : t.rows) flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

} // namespace

void check_partition(const std::vector<std::size_t>& partition) {
    if (partition.empty()) throw std::invalid_argument("partition must have at least one part");
    for (std::size_t i = 0; i < partition.size(); ++i) {
        if (partition[i] == 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && partition[i] > partition[i - 1])
            throw std::invalid_argument("partition parts must be non-increasing");
    }
}

std::vector<Tableau> tableau_basis(const std::vector<std::size_t>& partition) {
    check_partition(partition);
    std::size_t n = 0;
    for (std::size_t part : partition) n += part;
    Tableau current;
    current.rows.resize(partition.size());
    std::vector<std::size_t> fill(partition.size(), 0);
    std::vector<Tableau> out;
    enumerate(partition, fill, current, 1, static_cast<int>(n), out);
    std::sort(out.begin(), out.end(),
              [n](const Tableau& a, const Tableau& b) { return last_letter_less(a, b, n); });
    return out;
}

SparseMatrix symrep_generator(const std::vector<std::size_t>& partition, std::size_t j) {
    check_partition(partition);
    std::size_t n = 0;
    for (std::size_t part : partition) n += part;
    if (j < 1 || j + 1 > n)
        throw std::invalid_argument("generator index " + std::to_string(j) +
                                    " outside 1.." + std::to_string(n - 1));
    const std::vector<Tableau> basis = tableau_basis(partition);
    std::map<std::vector<int>, std::size_t> index_of;
    for (std::size_t b = 0; b < basis.size(); ++b) index_of[flatten(basis[b])] = b;

    SparseBuilder builder(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto pos = letter_positions(basis[b], n);
        const CellPos lo = pos[j];
        const CellPos hi = pos[j + 1];
        if (lo.row == hi.row) {
            builder.add(b, b, cplx(1.0, 0.0));
            continue;
        }
        if (lo.col == hi.col) {
            builder.add(b, b, cplx(-1.0, 0.0));
            continue;
        }
        const double rho = static_cast<double>(content_of(hi) - content_of(lo));
        builder.add(b, b, cplx(1.0 / rho, 0.0));
        Tableau swapped = basis[b];
        swapped.rows[lo.row][lo.col] = static_cast<int>(j + 1);
        swapped.rows[hi.row][hi.col] = static_cast<int>(j);
        const std::size_t partner = index_of.at(flatten(swapped));
        // The partner pass adds the mirrored entry; emit each direction once.
        if (partner > b) {
            const double off = std::sqrt(1.0 - 1.0 / (rho * rho));
            builder.add(b, partner, cplx(off, 0.0));
            builder.add(partner, b, cplx(off, 0.0));
        }
    }
    return builder.build();
}

SymrepReport symrep_check(const std::vector<std::size_t>& partition) {
    check_partition(partition);
    std::size_t n = 0;
    for (std::size_t part : partition) n += part;
    SymrepReport report;
    report.passed = true;
    if (n < 2) return report;

    std::vector<SparseMatrix> gens;
    for (std::size_t j = 1; j + 1 <= n; ++j) gens.push_back(symrep_generator(partition, j));
    const std::size_t dim = gens.front().dim();

    auto note = [&](double residual, const std::string& what) {
        report.max_residual = std::max(report.max_residual, residual);
        if (residual > 1e-10 && report.passed) {
            report.passed = false;
            report.detail = what + " residual " + std::to_string(residual);
        }
    };

    for (std::size_t j = 0; j < gens.size(); ++j) {
        note(frobenius_distance_to_identity(multiply(gens[j], gens[j])),
             "involution (j=" + std::to_string(j + 1) + ")");
        const UnitaryReport u = check_unitary(gens[j], 1e-10);
        note(std::max(u.max_col_defect, u.max_row_defect),
             "unitarity (j=" + std::to_string(j + 1) + ")");
        if (gens[j].max_row_nnz() > 2) {
            report.passed = false;
            report.detail = "row budget (j=" + std::to_string(j + 1) + "): " +
                            std::to_string(gens[j].max_row_nnz()) + " nonzeros";
        }
    }
    for (std::size_t j = 0; j + 1 < gens.size(); ++j) {
        const SparseMatrix lhs = multiply(multiply(gens[j], gens[j + 1]), gens[j]);
        const SparseMatrix rhs = multiply(multiply(gens[j + 1], gens[j]), gens[j + 1]);
        double residual = 0.0;
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                residual = std::max(residual, std::abs(lhs.at(r, c) - rhs.at(r, c)));
        note(residual, "braid (j=" + std::to_string(j + 1) + ", k=" + std::to_string(j + 2) +
                           ")");
    }
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t k = j + 2; k < gens.size(); ++k) {
            const SparseMatrix lhs = multiply(gens[j], gens[k]);
            const SparseMatrix rhs = multiply(gens[k], gens[j]);
            double residual = 0.0;
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    residual = std::max(residual, std::abs(lhs.at(r, c) - rhs.at(r, c)));
            note(residual, "commutation (j=" + std::to_string(j + 1) +
                               ", k=" + std::to_string(k + 1) + ")");
        }
    return report;
}

} // namespace spusim
