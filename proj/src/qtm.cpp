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

#include "spusim/qtm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "spusim/dilation.hpp"
#include "spusim/trotter.hpp"

namespace spusim {

namespace {

long shift_of(Dir d) {
    switch (d) {
        case Dir::L: return -1;
        case Dir::R: return 1;
        case Dir::S: return 0;
    }
    throw std::invalid_argument("unknown direction");
}

std::string dir_name(Dir d) {
    switch (d) {
        case Dir::L: return "L";
        case Dir::R: return "R";
        case Dir::S: return "S";
    }
    return "?";
}

std::size_t checked_mul(std::size_t a, std::size_t b, const char* what) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
        throw std::invalid_argument(std::string(what) + " overflows the index type");
    return a * b;
}

std::size_t find_name(const std::vector<std::string>& names, const std::string& name,
                      const char* kind) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw std::runtime_error(std::string("unknown ") + kind + " name \"" + name + "\"");
    return static_cast<std::size_t>(it - names.begin());
}

void check_rule_shape(const TransitionRule& rule) {
    if (rule.states.empty()) throw std::invalid_argument("rule has no states");
    if (rule.alphabet.empty()) throw std::invalid_argument("rule has no alphabet");
    if (rule.blank >= rule.alphabet.size())
        throw std::invalid_argument("blank symbol index out of range");
    for (const Transition& tr : rule.table) {
        if (tr.q >= rule.states.size() || tr.q2 >= rule.states.size())
            throw std::invalid_argument("transition state index out of range");
        if (tr.sigma >= rule.alphabet.size() || tr.sigma2 >= rule.alphabet.size())
            throw std::invalid_argument("transition symbol index out of range");
        if (tr.dir == Dir::S && !rule.allow_stay)
            throw std::invalid_argument("stay move present but allow_stay is not set");
    }
}

/// Outgoing transitions grouped by (q, sigma), the branching structure of
/// both the truncated matrix columns and the sparse propagation.
struct OutgoingTable {
    std::size_t num_symbols = 0;
    std::vector<std::vector<Transition>> groups;

    explicit OutgoingTable(const TransitionRule& rule)
        : num_symbols(rule.alphabet.size()),
          groups(rule.states.size() * rule.alphabet.size()) {
        for (const Transition& tr : rule.table)
            groups[tr.q * num_symbols + tr.sigma].push_back(tr);
    }

    const std::vector<Transition>& at(std::size_t q, std::size_t sigma) const {
        return groups[q * num_symbols + sigma];
    }
};

} // namespace

TransitionRule read_rule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    try {
        TransitionRule rule;
        rule.states = j.at("states").get<std::vector<std::string>>();
        rule.alphabet = j.at("alphabet").get<std::vector<std::string>>();
        rule.blank = find_name(rule.alphabet, j.at("blank").get<std::string>(), "symbol");
        rule.allow_stay = j.value("allow_stay", false);
        for (const auto& row : j.at("delta")) {
            Transition tr;
            tr.q = find_name(rule.states, row.at("q").get<std::string>(), "state");
            tr.sigma = find_name(rule.alphabet, row.at("sigma").get<std::string>(), "symbol");
            tr.q2 = find_name(rule.states, row.at("q2").get<std::string>(), "state");
            tr.sigma2 =
                find_name(rule.alphabet, row.at("sigma2").get<std::string>(), "symbol");
            const std::string dir = row.at("dir").get<std::string>();
            if (dir == "L")
                tr.dir = Dir::L;
            else if (dir == "R")
                tr.dir = Dir::R;
            else if (dir == "S")
                tr.dir = Dir::S;
            else
                throw std::runtime_error("direction must be L, R, or S, got \"" + dir + "\"");
            const auto& amp = row.at("amp");
            tr.amp = cplx(amp.at(0).get<double>(), amp.at(1).get<double>());
            rule.table.push_back(tr);
        }
        for (std::size_t a = 0; a < rule.table.size(); ++a)
            for (std::size_t b = a + 1; b < rule.table.size(); ++b) {
                const Transition &x = rule.table[a], &y = rule.table[b];
                if (x.q == y.q && x.sigma == y.sigma && x.q2 == y.q2 && x.sigma2 == y.sigma2 &&
                    x.dir == y.dir)
                    throw std::runtime_error(
                        "duplicate transition for (" + rule.states[x.q] + ", " +
                        rule.alphabet[x.sigma] + ") -> (" + rule.states[x.q2] + ", " +
                        rule.alphabet[x.sigma2] + ", " + dir_name(x.dir) + ")");
            }
        check_rule_shape(rule);
        return rule;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_rule(const TransitionRule& rule, const std::string& path) {
    check_rule_shape(rule);
    nlohmann::json j;
    j["states"] = rule.states;
    j["alphabet"] = rule.alphabet;
    j["blank"] = rule.alphabet[rule.blank];
    j["allow_stay"] = rule.allow_stay;
    nlohmann::json delta = nlohmann::json::array();
    for (const Transition& tr : rule.table) {
        nlohmann::json row;
        row["q"] = rule.states[tr.q];
        row["sigma"] = rule.alphabet[tr.sigma];
        row["q2"] = rule.states[tr.q2];
        row["sigma2"] = rule.alphabet[tr.sigma2];
        row["dir"] = dir_name(tr.dir);
        row["amp"] = {tr.amp.real(), tr.amp.imag()};
        delta.push_back(row);
    }
    j["delta"] = std::move(delta);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

QtmCodec::QtmCodec(const TransitionRule& rule, long t) {
    check_rule_shape(rule);
    if (t < 0) throw std::invalid_argument("radius must be nonnegative");
    t_ = t;
    num_states_ = rule.states.size();
    num_symbols_ = rule.alphabet.size();
    tape_span_ = static_cast<std::size_t>(2 * t + 1);
    powers_.resize(tape_span_ + 1);
    powers_[0] = 1;
    for (std::size_t i = 0; i < tape_span_; ++i)
        powers_[i + 1] = checked_mul(powers_[i], num_symbols_, "configuration count");
    tape_count_ = powers_[tape_span_];
    dim_ = checked_mul(checked_mul(tape_count_, num_states_, "configuration count"),
                       tape_span_, "configuration count");
}

std::size_t QtmCodec::encode(long p, std::size_t q,
                             const std::vector<std::size_t>& tape) const {
    if (p < -t_ || p > t_) throw std::invalid_argument("head position outside the radius");
    if (q >= num_states_) throw std::invalid_argument("state index out of range");
    if (tape.size() != tape_span_) throw std::invalid_argument("tape length mismatch");
    std::size_t value = 0;
    for (std::size_t i = 0; i < tape_span_; ++i) {
        if (tape[i] >= num_symbols_) throw std::invalid_argument("tape symbol out of range");
        value += tape[i] * powers_[i];
    }
    return value + tape_count_ * (q + num_states_ * static_cast<std::size_t>(p + t_));
}

std::size_t QtmCodec::encode_packed(long p, std::size_t q, std::size_t tape_value) const {
    if (p < -t_ || p > t_) throw std::invalid_argument("head position outside the radius");
    if (q >= num_states_) throw std::invalid_argument("state index out of range");
    if (tape_value >= tape_count_) throw std::invalid_argument("tape value out of range");
    return tape_value + tape_count_ * (q + num_states_ * static_cast<std::size_t>(p + t_));
}

void QtmCodec::decode(std::size_t index, long* p, std::size_t* q,
                      std::size_t* tape_value) const {
    if (index >= dim_) throw std::out_of_range("configuration index out of range");
    *tape_value = index % tape_count_;
    const std::size_t rest = index / tape_count_;
    *q = rest % num_states_;
    *p = static_cast<long>(rest / num_states_) - t_;
}

std::size_t QtmCodec::tape_symbol(std::size_t tape_value, long c) const {
    return (tape_value / powers_[static_cast<std::size_t>(c + t_)]) % num_symbols_;
}

std::size_t QtmCodec::tape_with(std::size_t tape_value, long c, std::size_t s) const {
    const std::size_t old = tape_symbol(tape_value, c);
    const std::size_t p = powers_[static_cast<std::size_t>(c + t_)];
    return tape_value + (s - old) * p;
}

double qtm_step_bound(long t) {
    if (t < 0) throw std::invalid_argument("radius must be nonnegative");
    // Tail of exp(pi/2) from order t, term-by-term until convergence.
    const double x = 2.0 * std::atan(1.0);
    double term = 1.0;
    for (long n = 1; n <= t; ++n) term *= x / static_cast<double>(n);
    double sum = 0.0;
    long n = t;
    while (term >= 1e-18) {
        sum += term;
        ++n;
        term *= x / static_cast<double>(n);
    }
    return 2.0 * sum;
}

SparseMatrix qtm_truncate(const TransitionRule& rule, long t, std::size_t size_cap) {
    check_rule_shape(rule);
    if (t < 1) throw std::invalid_argument("truncation radius must be at least 1");
    const QtmCodec codec(rule, t);
    if (codec.dim() > size_cap)
        throw std::invalid_argument("truncated dimension " + std::to_string(codec.dim()) +
                                    " exceeds the size cap " + std::to_string(size_cap));
    const OutgoingTable outgoing(rule);
    SparseBuilder builder(codec.dim());
    for (std::size_t j = 0; j < codec.dim(); ++j) {
        long p = 0;
        std::size_t q = 0, tv = 0;
        codec.decode(j, &p, &q, &tv);
        const std::size_t sigma = codec.tape_symbol(tv, p);
        for (const Transition& tr : outgoing.at(q, sigma)) {
            const long p2 = p + shift_of(tr.dir);
            if (p2 < -t || p2 > t) continue;
            const std::size_t tv2 = codec.tape_with(tv, p, tr.sigma2);
            builder.add(codec.encode_packed(p2, tr.q2, tv2), j, tr.amp);
        }
    }
    return builder.build();
}

QtmValidationReport qtm_validate(const TransitionRule& rule, long probe_t) {
    check_rule_shape(rule);
    if (probe_t < 1) throw std::invalid_argument("probe radius must be at least 1");
    const OutgoingTable outgoing(rule);
    for (std::size_t q = 0; q < rule.states.size(); ++q)
        for (std::size_t sigma = 0; sigma < rule.alphabet.size(); ++sigma) {
            double norm2 = 0.0;
            for (const Transition& tr : outgoing.at(q, sigma)) norm2 += std::norm(tr.amp);
            if (std::abs(norm2 - 1.0) > 1e-10)
                throw std::invalid_argument(
                    "outgoing amplitudes for (" + rule.states[q] + ", " +
                    rule.alphabet[sigma] + ") have squared norm " + std::to_string(norm2) +
                    ", expected 1");
        }

    const SparseMatrix m = qtm_truncate(rule, probe_t);
    const QtmCodec codec(rule, probe_t);
    // Interior columns have the head strictly inside the radius, so no
    // outgoing transition of theirs was dropped.
    std::vector<char> interior(codec.dim(), 0);
    for (std::size_t j = 0; j < codec.dim(); ++j) {
        long p = 0;
        std::size_t q = 0, tv = 0;
        codec.decode(j, &p, &q, &tv);
        interior[j] = (p > -probe_t && p < probe_t) ? 1 : 0;
    }
    std::vector<double> diag(codec.dim(), 0.0);
    std::unordered_map<std::size_t, cplx> off;
    for (std::size_t r = 0; r < m.dim(); ++r) {
        const auto row = m.row(r);
        for (std::size_t a = 0; a < row.size(); ++a) {
            if (!interior[row[a].col]) continue;
            diag[row[a].col] += std::norm(row[a].amp);
            for (std::size_t b = a + 1; b < row.size(); ++b) {
                if (!interior[row[b].col]) continue;
                const std::size_t key = row[a].col * m.dim() + row[b].col;
                off[key] += std::conj(row[a].amp) * row[b].amp;
            }
        }
    }
    QtmValidationReport report;
    report.probe_dim = codec.dim();
    double defect = 0.0;
    for (std::size_t j = 0; j < codec.dim(); ++j)
        if (interior[j]) defect = std::max(defect, std::abs(diag[j] - 1.0));
    for (const auto& [key, val] : off) {
        (void)key;
        defect = std::max(defect, std::abs(val));
    }
    report.max_interior_defect = defect;
    report.interior_unitary = defect <= 1e-10;
    return report;
}

std::unordered_map<std::size_t, cplx> qtm_propagate(const TransitionRule& rule,
                                                    const QtmInput& input, std::size_t s,
                                                    long t) {
    check_rule_shape(rule);
    if (t < 1) throw std::invalid_argument("radius must be at least 1");
    if (input.start_state >= rule.states.size())
        throw std::invalid_argument("start state index out of range");
    const QtmCodec codec(rule, t);
    const OutgoingTable outgoing(rule);
    std::vector<std::size_t> tape(static_cast<std::size_t>(2 * t + 1), rule.blank);
    for (const auto& [c, sym] : input.tape) {
        if (c < -t || c > t)
            throw std::invalid_argument("input tape cell " + std::to_string(c) +
                                        " outside radius " + std::to_string(t));
        if (sym >= rule.alphabet.size())
            throw std::invalid_argument("input tape symbol out of range");
        tape[static_cast<std::size_t>(c + t)] = sym;
    }
    std::unordered_map<std::size_t, cplx> state;
    state[codec.encode(0, input.start_state, tape)] = cplx(1.0, 0.0);
    for (std::size_t step = 0; step < s; ++step) {
        std::unordered_map<std::size_t, cplx> next;
        next.reserve(state.size() * 4);
        for (const auto& [j, a] : state) {
            long p = 0;
            std::size_t q = 0, tv = 0;
            codec.decode(j, &p, &q, &tv);
            const std::size_t sigma = codec.tape_symbol(tv, p);
            for (const Transition& tr : outgoing.at(q, sigma)) {
                const long p2 = p + shift_of(tr.dir);
                if (p2 < -t || p2 > t) continue;
                const std::size_t tv2 = codec.tape_with(tv, p, tr.sigma2);
                next[codec.encode_packed(p2, tr.q2, tv2)] += a * tr.amp;
            }
        }
        // Drop numerically dead entries so the support stays tight.
        for (auto it = next.begin(); it != next.end();)
            it = (std::abs(it->second) < 1e-300) ? next.erase(it) : std::next(it);
        state = std::move(next);
    }
    return state;
}

std::size_t qtm_lift_index(const TransitionRule& rule, std::size_t index, long t_from,
                           long t_to) {
    if (t_to < t_from) throw std::invalid_argument("target radius below source radius");
    const QtmCodec from(rule, t_from), to(rule, t_to);
    long p = 0;
    std::size_t q = 0, tv = 0;
    from.decode(index, &p, &q, &tv);
    std::vector<std::size_t> tape(static_cast<std::size_t>(2 * t_to + 1), rule.blank);
    for (long c = -t_from; c <= t_from; ++c)
        tape[static_cast<std::size_t>(c + t_to)] = from.tape_symbol(tv, c);
    return to.encode(p, q, tape);
}

StateVector qtm_run(const TransitionRule& rule, const QtmInput& input, std::size_t s, long t,
                    const std::string& method, double epsilon) {
    check_rule_shape(rule);
    if (t < 1) throw std::invalid_argument("radius must be at least 1");
    if (s >= static_cast<std::size_t>(t))
        throw std::invalid_argument("step count " + std::to_string(s) +
                                    " must stay below the radius " + std::to_string(t));
    const QtmCodec codec(rule, t);
    const double allowed_loss =
        static_cast<double>(s) * qtm_step_bound(t) +
        (method == "dilation" ? static_cast<double>(s) * epsilon : 0.0) + 1e-9;

    std::vector<cplx> amps(codec.dim(), cplx(0.0, 0.0));
    if (method == "direct") {
        const auto support = qtm_propagate(rule, input, s, t);
        for (const auto& [idx, a] : support) amps[idx] = a;
    } else if (method == "dilation") {
        // Evolve at double radius so no reachable column is truncated, then
        // project back; only the product-formula target contributes error.
        const long t2 = 2 * t;
        const QtmCodec wide(rule, t2);
        const SparseMatrix m2 = qtm_truncate(rule, t2);
        const Dilation d = dilate_unchecked(m2);
        const FactoredEvolution fe = trotterize(d.h, 2.0 * std::atan(1.0), epsilon, 2);
        std::vector<std::size_t> tape(static_cast<std::size_t>(2 * t2 + 1), rule.blank);
        for (const auto& [c, sym] : input.tape) {
            if (c < -t || c > t)
                throw std::invalid_argument("input tape cell " + std::to_string(c) +
                                            " outside radius " + std::to_string(t));
            if (sym >= rule.alphabet.size())
                throw std::invalid_argument("input tape symbol out of range");
            tape[static_cast<std::size_t>(c + t2)] = sym;
        }
        std::vector<cplx> wide_state(wide.dim(), cplx(0.0, 0.0));
        wide_state[wide.encode(0, input.start_state, tape)] = cplx(1.0, 0.0);
        for (std::size_t step = 0; step < s; ++step) {
            const std::vector<cplx> evolved = apply_factored(fe, embed_state(wide_state, 1));
            auto [front, back] = split_blocks(evolved);
            (void)back;
            // Quarter period maps block-1 injection to -i M psi in block 0.
            for (cplx& a : front) a *= cplx(0.0, 1.0);
            wide_state = std::move(front);
        }
        for (std::size_t j = 0; j < codec.dim(); ++j)
            amps[j] = wide_state[qtm_lift_index(rule, j, t, t2)];
    } else {
        throw std::invalid_argument("unknown run method \"" + method +
                                    "\" (expected direct or dilation)");
    }

    const double n = norm(amps);
    if (n > 1.0 + allowed_loss || 1.0 - n > allowed_loss)
        throw std::runtime_error("norm deviation " + std::to_string(std::abs(1.0 - n)) +
                                 " exceeds the certified per-step loss");
    return StateVector(std::move(amps), std::abs(n - 1.0) <= 1e-10);
}

} // namespace spusim
