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

#include "spusim/random_unitary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace spusim {

namespace {

constexpr int kMixingRounds = 40;

} // namespace

SparseMatrix random_sparse_unitary(std::size_t dim, std::size_t max_per_line,
                                   std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    if (max_per_line == 0) {
        throw std::invalid_argument("per-line nonzero budget must be positive");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    // Phased permutation seed matrix: U e_j = phase_j e_{perm[j]}.
    std::vector<std::size_t> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    std::vector<std::map<std::size_t, cplx>> rows(dim);
    std::vector<std::size_t> col_count(dim, 1);
    for (std::size_t j = 0; j < dim; ++j) {
        rows[perm[j]][j] = std::exp(cplx(0.0, angle(rng)));
    }

    if (max_per_line > 1) {
        std::vector<std::size_t> order(dim);
        std::iota(order.begin(), order.end(), 0);
        for (int round = 0; round < kMixingRounds; ++round) {
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t k = 0; k + 1 < dim; k += 2) {
                const std::size_t a = order[k];
                const std::size_t b = order[k + 1];

                std::set<std::size_t> support;
                for (const auto& [c, v] : rows[a]) support.insert(c);
                for (const auto& [c, v] : rows[b]) support.insert(c);
                if (support.size() > max_per_line) continue;

                bool fits = true;
                for (std::size_t c : support) {
                    const bool in_a = rows[a].count(c) != 0;
                    const bool in_b = rows[b].count(c) != 0;
                    if (in_a != in_b && col_count[c] + 1 > max_per_line) {
                        fits = false;
                        break;
                    }
                }
                if (!fits) continue;

                const double theta = angle(rng);
                const double c0 = std::cos(theta);
                const double s0 = std::sin(theta);
                const cplx w = std::exp(cplx(0.0, angle(rng)));

                std::map<std::size_t, cplx> new_a, new_b;
                for (std::size_t c : support) {
                    auto ita = rows[a].find(c);
                    auto itb = rows[b].find(c);
                    const cplx va = ita == rows[a].end() ? cplx(0.0, 0.0) : ita->second;
                    const cplx vb = itb == rows[b].end() ? cplx(0.0, 0.0) : itb->second;
                    const cplx na = c0 * va + w * s0 * vb;
                    const cplx nb = -std::conj(w) * s0 * va + c0 * vb;
                    int now = 0;
                    if (std::abs(na) >= kDropTol) {
                        new_a[c] = na;
                        ++now;
                    }
                    if (std::abs(nb) >= kDropTol) {
                        new_b[c] = nb;
                        ++now;
                    }
                    const int before = static_cast<int>(ita != rows[a].end()) +
                                       static_cast<int>(itb != rows[b].end());
                    col_count[c] = col_count[c] + now - before;
                }
                rows[a] = std::move(new_a);
                rows[b] = std::move(new_b);
            }
        }
    }

    SparseBuilder builder(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (const auto& [c, v] : rows[i]) builder.add(i, c, v);
    }
    return builder.build();
}

DenseMatrix random_dense_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) m.at(i, j) = cplx(gauss(rng), gauss(rng));
    }
    // Modified Gram-Schmidt, two passes per column for orthogonality at
    // working precision.
    for (std::size_t j = 0; j < dim; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj(0.0, 0.0);
                for (std::size_t i = 0; i < dim; ++i) {
                    proj += std::conj(m.at(i, k)) * m.at(i, j);
                }
                for (std::size_t i = 0; i < dim; ++i) m.at(i, j) -= proj * m.at(i, k);
            }
        }
        double n = 0.0;
        for (std::size_t i = 0; i < dim; ++i) n += std::norm(m.at(i, j));
        n = std::sqrt(n);
        if (n < 1e-8) throw std::runtime_error("degenerate Gaussian draw in orthonormalization");
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) /= n;
    }
    return m;
}

StateVector random_state(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(dim);
    for (auto& a : amps) a = cplx(gauss(rng), gauss(rng));
    const double n = norm(amps);
    for (auto& a : amps) a /= n;
    return StateVector(std::move(amps), true);
}

} // namespace spusim
