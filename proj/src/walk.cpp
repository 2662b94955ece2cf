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

#include "spusim/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "spusim/trotter.hpp"

namespace spusim {

SparseMatrix walk_step(std::size_t n) {
    if (n < 2) throw std::invalid_argument("cycle length must be at least 2");
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Entry> entries;
    entries.reserve(4 * n);
    for (std::size_t y = 0; y < n; ++y) {
        const std::size_t up = (y + 1) % n;
        const std::size_t down = (y + n - 1) % n;
        // Row (y, 0) collects coin-0 output of site y + 1; row (y, 1) the
        // coin-1 output of site y - 1, with the coin's sign on (1, 1).
        entries.push_back({2 * y, 2 * up, cplx(h, 0.0)});
        entries.push_back({2 * y, 2 * up + 1, cplx(h, 0.0)});
        entries.push_back({2 * y + 1, 2 * down, cplx(h, 0.0)});
        entries.push_back({2 * y + 1, 2 * down + 1, cplx(-h, 0.0)});
    }
    return SparseMatrix::from_entries(2 * n, std::move(entries));
}

WalkRunResult walk_run(std::size_t n, const StateVector& v0, std::size_t steps,
                       const std::string& method, double epsilon) {
    const SparseMatrix w = walk_step(n);
    if (v0.dim() != 2 * n)
        throw std::invalid_argument("start state has dimension " + std::to_string(v0.dim()) +
                                    ", expected " + std::to_string(2 * n));
    StateVector state = v0;
    if (method == "direct") {
        for (std::size_t k = 0; k < steps; ++k)
            state = StateVector(matvec(w, state.amps), state.normalized);
    } else if (method == "dilation") {
        const ImplementedUnitary impl = implement_unitary(w, epsilon, 2);
        for (std::size_t k = 0; k < steps; ++k) state = run_implemented(impl, state);
    } else {
        throw std::invalid_argument("unknown run method \"" + method +
                                    "\" (expected direct or dilation)");
    }
    WalkRunResult result{std::move(state), std::vector<double>(n, 0.0)};
    for (std::size_t x = 0; x < n; ++x)
        result.site_distribution[x] =
            std::norm(result.state.amps[2 * x]) + std::norm(result.state.amps[2 * x + 1]);
    return result;
}

} // namespace spusim
