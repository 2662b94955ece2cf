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

#include <complex>
#include <cstddef>
#include <cstdint>

namespace spusim {

using cplx = std::complex<double>;

/// Entries with |amp| below this are treated as structural zeros everywhere.
inline constexpr double kDropTol = 1e-14;

/// Largest dimension for which dense materialization is permitted.
inline constexpr std::size_t kDenseCap = 4096;

/// Default relative accuracy for spectral-norm power iteration.
inline constexpr double kSpectralNormTol = 1e-10;

/// Iteration cap for the power iteration.
inline constexpr std::size_t kPowerIterCap = 10000;

/// Tolerance at which a matrix is accepted as unitary by contract checks.
inline constexpr double kUnitaryTol = 1e-12;

/// Grid resolution for the phase-invariant distance scan.
inline constexpr std::size_t kPhaseGridPoints = 720;

/// Hard cap on Trotter repetition counts.
inline constexpr std::size_t kRepetitionCap = std::size_t{1} << 20;

/// Default cap on the truncated Turing machine dimension.
inline constexpr std::size_t kQtmSizeCap = 1000000;

} // namespace spusim
