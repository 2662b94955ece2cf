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

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "spusim/sparse.hpp"
#include "spusim/statevec.hpp"
#include "spusim/types.hpp"

namespace spusim {

enum class Dir { L, R, S };

struct Transition {
    std::size_t q;
    std::size_t sigma;
    std::size_t q2;
    std::size_t sigma2;
    Dir dir;
    cplx amp;
};

/**
 * @brief Amplitude transition table of a tape machine.
 *
 * States and symbols are referenced by index into the name lists; the
 * designated blank is an alphabet index. A well-formed table has a unit
 * outgoing amplitude vector for every (state, symbol) pair; that is
 * checked by qtm_validate, not at construction.
 */
struct TransitionRule {
    std::vector<std::string> states;
    std::vector<std::string> alphabet;
    std::size_t blank = 0;
    bool allow_stay = false;
    std::vector<Transition> table;
};

/// Rule JSON: {"states", "alphabet", "blank", "delta":
/// [{"q","sigma","q2","sigma2","dir","amp":[re,im]}], "allow_stay"}.
/// Names in delta refer to the state and alphabet lists; dir is "L", "R",
/// or "S" (the latter only when allow_stay is set).
TransitionRule read_rule(const std::string& path);
void write_rule(const TransitionRule& rule, const std::string& path);

/**
 * @brief Bijection between configurations and flat indices at radius t.
 *
 * A configuration is (head position p in [-t, t], state q, tape string s
 * over cells -t..t). The index is tape-first little-endian base-|alphabet|
 * over cells -t..t, with q and p + t as the high mixed-radix digits.
 */
class QtmCodec {
  public:
    QtmCodec(const TransitionRule& rule, long t);

    std::size_t dim() const { return dim_; }
    long t() const { return t_; }

    std::size_t encode(long p, std::size_t q, const std::vector<std::size_t>& tape) const;
    /// encode() for a tape already packed as a base-|alphabet| value.
    std::size_t encode_packed(long p, std::size_t q, std::size_t tape_value) const;
    /// Decomposes an index into (p, q, tape digits value).
    void decode(std::size_t index, long* p, std::size_t* q, std::size_t* tape_value) const;
    /// Symbol at cell c (in [-t, t]) of a packed tape value.
    std::size_t tape_symbol(std::size_t tape_value, long c) const;
    /// Packed tape with cell c replaced by symbol s.
    std::size_t tape_with(std::size_t tape_value, long c, std::size_t s) const;

  private:
    long t_;
    std::size_t num_states_;
    std::size_t num_symbols_;
    std::size_t tape_span_;
    std::size_t tape_count_;
    std::size_t dim_;
    std::vector<std::size_t> powers_;
};

/// Per-step truncation-error bound: twice the tail of the exponential
/// series of pi/2 starting at order t, summed until terms fall below
/// 1e-18.
double qtm_step_bound(long t);

/**
 * @brief Truncated one-step matrix at radius t.
 *
 * Matrix elements follow the transition amplitudes with the head-shift
 * constraint; transitions that would move the head outside [-t, t] are
 * dropped, making boundary columns sub-unitary. Row and column nonzero
 * counts stay within 2 |alphabet| |states| (3x with stay moves). Throws
 * std::invalid_argument when the dimension exceeds size_cap.
 */
SparseMatrix qtm_truncate(const TransitionRule& rule, long t,
                          std::size_t size_cap = kQtmSizeCap);

struct QtmValidationReport {
    bool interior_unitary = false;
    double max_interior_defect = 0.0;
    std::size_t probe_dim = 0;
};

/**
 * @brief Checks well-formedness of a rule at a probe radius.
 *
 * First verifies every (state, symbol) outgoing amplitude vector is
 * normalized (violations throw std::invalid_argument naming the pair),
 * then builds the truncated matrix and checks the column Gram restricted
 * to interior columns (head strictly inside the radius), which must be
 * unitary at 1e-10 for a well-formed rule.
 */
QtmValidationReport qtm_validate(const TransitionRule& rule, long probe_t);

/// Initial configuration: head at cell 0, given state, non-blank tape
/// cells listed explicitly.
struct QtmInput {
    std::size_t start_state = 0;
    std::map<long, std::size_t> tape;
};

/**
 * @brief Runs s truncated steps and returns the raw (unrenormalized) state.
 *
 * The direct method propagates the sparse support forward without
 * materializing the matrix. The dilation method builds the truncated
 * matrix at radius 2t, evolves its Hermitian embedding by trotterized
 * quarter periods at the given target, and projects back onto radius-t
 * configurations. Requires s < t; the head starts at cell 0 and the input
 * must fit inside the radius. Norm deviation beyond the per-step bound
 * (plus the trotter target, for the dilation method) raises
 * std::runtime_error.
 */
StateVector qtm_run(const TransitionRule& rule, const QtmInput& input, std::size_t s, long t,
                    const std::string& method = "direct", double epsilon = 1e-3);

/// Sparse s-step propagation at radius t: index -> amplitude over the
/// reachable support only. The workhorse behind qtm_run's direct method,
/// usable when the full state vector would be wastefully large.
std::unordered_map<std::size_t, cplx> qtm_propagate(const TransitionRule& rule,
                                                    const QtmInput& input, std::size_t s,
                                                    long t);

/// Index of the radius t_to configuration equivalent to index (at radius
/// t_from <= t_to): same head, state, and tape contents, outer cells
/// blank.
std::size_t qtm_lift_index(const TransitionRule& rule, std::size_t index, long t_from,
                           long t_to);

} // namespace spusim
