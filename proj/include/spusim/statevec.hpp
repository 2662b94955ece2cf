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
#include <vector>

#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Complex state vector with an explicit normalization claim.
 *
 * A state constructed as normalized must have unit two-norm within 1e-10;
 * violations throw std::invalid_argument at construction.
 */
struct StateVector {
    std::vector<cplx> amps;
    bool normalized = false;

    StateVector() = default;
    StateVector(std::vector<cplx> a, bool claim_normalized);

    std::size_t dim() const { return amps.size(); }
    double norm() const;

    /// Unit basis vector e_index in dimension dim.
    static StateVector basis(std::size_t dim, std::size_t index);
};

double norm(const std::vector<cplx>& v);
cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Two-norm of (a - b); dimensions must agree.
double l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// min over phases of || a - e^{i phi} b ||_2, closed form via the inner
/// product: sqrt(||a||^2 + ||b||^2 - 2 |<a, b>|).
double phase_invariant_l2_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

} // namespace spusim
