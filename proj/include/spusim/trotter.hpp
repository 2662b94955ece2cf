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

#include "spusim/dense.hpp"
#include "spusim/dilation.hpp"
#include "spusim/sparse.hpp"
#include "spusim/statevec.hpp"
#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Product-formula approximation of e^{-i h t} as repeated slices.
 *
 * One slice covers time t / r with either the plain product over the
 * one-sparse terms (order 1) or its palindromic symmetrization (order 2).
 * The full factor sequence is the slice repeated r times; factors are
 * listed in application order (first factor hits the state first).
 */
struct FactoredEvolution {
    std::size_t dim = 0;
    double t = 0.0;
    int order = 1;
    std::size_t r = 1;
    double epsilon = 0.0;
    /// Per-slice error bound times r, from the selection probe.
    double certified_bound = 0.0;
    std::vector<SparseMatrix> slice;

    std::size_t factor_count() const { return slice.size() * r; }
};

/// Unitary factors of one slice of duration tau, in application order.
/// Order 1 multiplies the term exponentials once each; order 2 wraps the
/// last term at full tau inside half-tau sweeps of the preceding terms.
std::vector<SparseMatrix> trotter_slice(const std::vector<SparseMatrix>& terms, double tau,
                                        int order);

/**
 * @brief Chooses a repetition count meeting epsilon and packages the slices.
 *
 * The probe metric is r times the spectral distance between one slice and
 * the exact short-time evolution, evaluated matrix-free; unitarity of both
 * sides makes r times the slice defect a bound for the full product. The
 * search starts from the analytic repetition estimate, bisects over powers
 * of two, then refines on integers, within a fixed probe budget. Throws
 * std::runtime_error when the bound cannot be met within the repetition
 * cap.
 */
FactoredEvolution trotterize(const SparseMatrix& h, double t, double epsilon, int order);

/// Applies the full factor sequence (slice repeated r times) to a state.
StateVector apply_factored(const FactoredEvolution& fe, const StateVector& state);

/// Applies the factor sequence to a raw vector.
std::vector<cplx> apply_factored(const FactoredEvolution& fe, const std::vector<cplx>& amps);

/**
 * @brief Dense verification: || slice^r - e^{-i h t} || in spectral norm.
 *
 * The reference exponential uses the closed form when h squares to the
 * identity, direct phases when h is diagonal, and an eigendecomposition
 * otherwise. Only valid below the dense cap.
 */
double measured_error(const FactoredEvolution& fe, const SparseMatrix& h);

/// Dense product of one slice, in application order. Only below the cap.
DenseMatrix slice_product_dense(const FactoredEvolution& fe);

/**
 * @brief Full pipeline: unitary in, factored quarter-period evolution out.
 *
 * Dilates u, trotterizes the embedding at theta = pi / 2 with the given
 * target, and returns the evolution together with the embedding. Applying
 * the factors to a state injected in the second block yields u times the
 * state in the first block, up to the fixed quarter-period phase.
 */
struct ImplementedUnitary {
    Dilation dilation;
    FactoredEvolution evolution;
};

ImplementedUnitary implement_unitary(const SparseMatrix& u, double epsilon, int order);

/// Runs an implemented unitary on a state: embed, evolve, read back, strip
/// the quarter-period phase unless keep_phase. Guards readout leakage at
/// twice the evolution target.
StateVector run_implemented(const ImplementedUnitary& impl, const StateVector& state,
                            bool keep_phase = false);

} // namespace spusim
