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

#include "spusim/statevec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spusim {

StateVector::StateVector(std::vector<cplx> a, bool claim_normalized)
    : amps(std::move(a)), normalized(claim_normalized) {
    if (normalized && std::abs(norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("state claimed normalized but has norm " +
                                    std::to_string(norm()));
    }
}

double StateVector::norm() const { return spusim::norm(amps); }

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw std::out_of_range("basis index " + std::to_string(index) +
                                " outside dimension " + std::to_string(dim));
    }
    std::vector<cplx> amps(dim, cplx(0.0, 0.0));
    amps[index] = cplx(1.0, 0.0);
    return StateVector(std::move(amps), true);
}

double norm(const std::vector<cplx>& v) {
    double sum = 0.0;
    for (const cplx& x : v) sum += std::norm(x);
    return std::sqrt(sum);
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch in inner product: " +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch in distance: " +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::norm(a[i] - b[i]);
    return std::sqrt(sum);
}

double phase_invariant_l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const double na = norm(a);
    const double nb = norm(b);
    const double overlap = std::abs(inner(a, b));
    const double sq = na * na + nb * nb - 2.0 * overlap;
    return std::sqrt(std::max(0.0, sq));
}

} // namespace spusim
