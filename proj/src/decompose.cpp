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

#include "spusim/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace spusim {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_hermitian(const SparseMatrix& h) {
    for (const Entry& e : h.entries()) {
        if (std::abs(e.amp - std::conj(h.at(e.col, e.row))) > kHermitianTol) {
            throw std::invalid_argument("matrix is not Hermitian at (" +
                                        std::to_string(e.row) + ", " + std::to_string(e.col) +
                                        ")");
        }
    }
}

} // namespace

SparsityGraph build_graph(const SparseMatrix& h) {
    require_hermitian(h);
    SparsityGraph g;
    g.dim = h.dim();
    std::vector<std::size_t> degree(h.dim(), 0);
    for (const Entry& e : h.entries()) {
        if (e.row == e.col) {
            g.has_diagonal = true;
        } else if (e.row < e.col) {
            g.edges.emplace_back(e.row, e.col);
            ++degree[e.row];
            ++degree[e.col];
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (std::size_t d : degree) g.max_degree = std::max(g.max_degree, d);
    return g;
}

std::vector<std::size_t> edge_color(const SparsityGraph& graph) {
    std::vector<std::unordered_set<std::size_t>> used(graph.dim);
    std::vector<std::size_t> colors;
    colors.reserve(graph.edges.size());
    for (const auto& [u, v] : graph.edges) {
        std::size_t c = 0;
        while (used[u].count(c) != 0 || used[v].count(c) != 0) ++c;
        used[u].insert(c);
        used[v].insert(c);
        colors.push_back(c);
    }
    return colors;
}

std::vector<SparseMatrix> split_one_sparse(const SparseMatrix& h) {
    const SparsityGraph g = build_graph(h);
    const std::vector<std::size_t> colors = edge_color(g);
    std::size_t num_colors = 0;
    for (std::size_t c : colors) num_colors = std::max(num_colors, c + 1);

    std::vector<SparseMatrix> terms;
    terms.reserve(num_colors + 1);
    for (std::size_t c = 0; c < num_colors; ++c) {
        std::vector<Entry> entries;
        for (std::size_t k = 0; k < g.edges.size(); ++k) {
            if (colors[k] != c) continue;
            const auto [i, j] = g.edges[k];
            entries.push_back({i, j, h.at(i, j)});
            entries.push_back({j, i, h.at(j, i)});
        }
        terms.push_back(SparseMatrix::from_entries(h.dim(), std::move(entries)));
    }
    if (g.has_diagonal) {
        std::vector<Entry> entries;
        for (const Entry& e : h.entries()) {
            if (e.row == e.col) entries.push_back(e);
        }
        terms.push_back(SparseMatrix::from_entries(h.dim(), std::move(entries)));
    }
    return terms;
}

SparseMatrix exp_term(const SparseMatrix& term, double theta) {
    if (term.max_row_nnz() > 1 || term.max_col_nnz() > 1) {
        throw std::invalid_argument("term is not one-sparse");
    }
    require_hermitian(term);

    const std::size_t dim = term.dim();
    std::vector<Entry> out;
    out.reserve(dim + term.nnz());
    std::vector<bool> done(dim, false);
    for (std::size_t i = 0; i < dim; ++i) {
        if (done[i]) continue;
        auto r = term.row(i);
        if (r.empty()) {
            out.push_back({i, i, cplx(1.0, 0.0)});
            done[i] = true;
            continue;
        }
        const Entry& e = r[0];
        if (e.col == i) {
            out.push_back({i, i, std::exp(cplx(0.0, -theta * e.amp.real()))});
            done[i] = true;
            continue;
        }
        // Off-diagonal pair: one-sparsity closes rows i and e.col into a
        // two-by-two block with zero diagonal, whose exponential is
        // cos(|a| theta) I - i sin(|a| theta) / |a| * block.
        const std::size_t j = e.col;
        const cplx a = e.amp;
        const double omega = std::abs(a);
        const double cw = std::cos(omega * theta);
        const double sw = std::sin(omega * theta);
        out.push_back({i, i, cplx(cw, 0.0)});
        out.push_back({j, j, cplx(cw, 0.0)});
        out.push_back({i, j, cplx(0.0, -sw / omega) * a});
        out.push_back({j, i, cplx(0.0, -sw / omega) * std::conj(a)});
        done[i] = true;
        done[j] = true;
    }
    return SparseMatrix::from_entries(dim, std::move(out));
}

} // namespace spusim
