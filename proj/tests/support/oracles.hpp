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
#include <cstdint>
#include <vector>

#include "spusim/qtm.hpp"
#include "spusim/sparse.hpp"

namespace spusim::testing {

/// Standard-tableau count of the shape by the hook-length product,
/// independent of the enumeration the library uses.
std::size_t hook_length_dim(const std::vector<std::size_t>& partition);

/// Number of connected components of the undirected sparsity pattern.
std::size_t pattern_components(const SparseMatrix& m);

/// Well-formed rule by construction: every target state carries a fixed
/// head direction and the amplitude block over (state, symbol) pairs is a
/// Haar-like random unitary, which makes the induced infinite-tape step
/// unitary regardless of the direction assignment.
TransitionRule random_well_formed_rule(std::size_t num_states, std::size_t num_symbols,
                                       std::uint64_t seed);

} // namespace spusim::testing
