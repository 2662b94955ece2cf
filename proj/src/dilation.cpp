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

#include "spusim/dilation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spusim {

namespace {

constexpr double kInvolutionTol = 1e-10;
constexpr double kLeakageTol = 1e-10;

Dilation build_dilation(const SparseMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<Entry> entries;
    entries.reserve(2 * m.nnz());
    for (const Entry& e : m.entries()) {
        entries.push_back({e.row, n + e.col, e.amp});
        entries.push_back({n + e.col, e.row, std::conj(e.amp)});
    }
    Dilation d;
    d.h = SparseMatrix::from_entries(2 * n, std::move(entries));
    d.original_dim = n;
    return d;
}

} // namespace

Dilation dilate(const SparseMatrix& u) {
    const UnitaryReport report = check_unitary(u, kUnitaryTol);
    if (!report.is_unitary) {
        throw std::invalid_argument(
            "input is not unitary (column defect " + std::to_string(report.max_col_defect) +
            ", row defect " + std::to_string(report.max_row_defect) + ")");
    }
    return build_dilation(u);
}

Dilation dilate_unchecked(const SparseMatrix& m) { return build_dilation(m); }

double involution_defect(const SparseMatrix& h) {
    return frobenius_distance_to_identity(multiply(h, h));
}

SparseMatrix analytic_evolution(const SparseMatrix& h, double theta) {
    const double defect = involution_defect(h);
    if (defect > kInvolutionTol) {
        throw std::invalid_argument("matrix does not square to the identity (defect " +
                                    std::to_string(defect) + ")");
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    SparseBuilder b(h.dim());
    for (std::size_t i = 0; i < h.dim(); ++i) b.add(i, i, cplx(c, 0.0));
    for (const Entry& e : h.entries()) b.add(e.row, e.col, cplx(0.0, -s) * e.amp);
    return b.build();
}

std::vector<cplx> embed_state(const std::vector<cplx>& amps, int block) {
    if (block != 0 && block != 1) throw std::invalid_argument("block must be 0 or 1");
    const std::size_t n = amps.size();
    std::vector<cplx> out(2 * n, cplx(0.0, 0.0));
    const std::size_t offset = block == 0 ? 0 : n;
    for (std::size_t i = 0; i < n; ++i) out[offset + i] = amps[i];
    return out;
}

std::pair<std::vector<cplx>, std::vector<cplx>> split_blocks(const std::vector<cplx>& amps) {
    if (amps.size() % 2 != 0) {
        throw std::invalid_argument("doubled-space vector must have even length");
    }
    const std::size_t n = amps.size() / 2;
    std::vector<cplx> first(amps.begin(), amps.begin() + n);
    std::vector<cplx> second(amps.begin() + n, amps.end());
    return {std::move(first), std::move(second)};
}

StateVector apply_via_dilation(const SparseMatrix& u, const StateVector& state,
                               bool keep_phase) {
    if (state.dim() != u.dim()) {
        throw std::invalid_argument("state dimension " + std::to_string(state.dim()) +
                                    " does not match matrix dimension " +
                                    std::to_string(u.dim()));
    }
    const Dilation d = dilate(u);
    const SparseMatrix w = analytic_evolution(d.h, std::numbers::pi / 2.0);
    const std::vector<cplx> evolved = matvec(w, embed_state(state.amps, 1));
    auto [first, second] = split_blocks(evolved);
    const double leakage = norm(second);
    if (leakage > kLeakageTol) {
        throw std::runtime_error("evolution leaked weight " + std::to_string(leakage) +
                                 " outside the readout block");
    }
    if (!keep_phase) {
        // The quarter period contributes a fixed -i on the readout block.
        for (cplx& a : first) a *= cplx(0.0, 1.0);
    }
    return StateVector(std::move(first), state.normalized);
}

} // namespace spusim
