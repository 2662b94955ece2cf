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
//
// Acceptance gate: one line per criterion, PASS only when every check in
// the criterion holds at its pinned tolerance. The process exits with the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "spusim/decompose.hpp"
#include "spusim/dense.hpp"
#include "spusim/dilation.hpp"
#include "spusim/io.hpp"
#include "spusim/qtm.hpp"
#include "spusim/random_unitary.hpp"
#include "spusim/statevec.hpp"
#include "spusim/symrep.hpp"
#include "spusim/trotter.hpp"
#include "spusim/walk.hpp"
#include "support/oracles.hpp"

using namespace spusim;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", x);
    return buf;
}

/// 20 sparse unitary fixtures cycling dimension {16, 64, 256} against
/// per-line budget {2, 4, 8}; the first nine cover every combination.
const std::vector<SparseMatrix>& fixtures() {
    static const std::vector<SparseMatrix> cache = [] {
        const std::size_t dims[] = {16, 64, 256};
        const std::size_t budgets[] = {2, 4, 8};
        std::vector<SparseMatrix> out;
        for (std::size_t k = 0; k < 20; ++k)
            out.push_back(random_sparse_unitary(dims[k % 3], budgets[(k / 3) % 3],
                                                1000 + static_cast<std::uint64_t>(k)));
        return out;
    }();
    return cache;
}

// Criterion 1: the quarter-period closed form of each embedding equals
// -i times the embedding itself, at 1e-10, within 10 seconds.
Outcome criterion_quarter_period() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const SparseMatrix& u : fixtures()) {
        const Dilation d = dilate(u);
        const DenseMatrix lhs = to_dense(analytic_evolution(d.h, kPi / 2.0));
        DenseMatrix rhs = to_dense(d.h);
        for (std::size_t i = 0; i < rhs.dim(); ++i)
            for (std::size_t j = 0; j < rhs.dim(); ++j)
                rhs.at(i, j) *= cplx(0.0, -1.0);
        worst = std::max(worst, distance(lhs, rhs));
    }
    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = worst <= 1e-10 && elapsed < 10.0;
    o.detail = "max distance " + sci(worst) + " (tol 1e-10), " + sci(elapsed) +
               " s (cap 10 s) over 20 embeddings";
    return o;
}

// Criterion 2: the trotterized embedding applies each unitary to 50
// random states within 1e-3 in the two-norm, within 60 seconds.
Outcome criterion_end_to_end_application() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<ImplementedUnitary> impls;
    impls.reserve(fixtures().size());
    for (const SparseMatrix& u : fixtures()) impls.push_back(implement_unitary(u, 1e-3, 2));
    double worst = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t f = i % fixtures().size();
        const SparseMatrix& u = fixtures()[f];
        const StateVector psi = random_state(u.dim(), 5000 + static_cast<std::uint64_t>(i));
        const StateVector got = run_implemented(impls[f], psi);
        const std::vector<cplx> expect = matvec(u, psi.amps);
        worst = std::max(worst, l2_distance(got.amps, expect));
    }
    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = worst <= 1e-3 && elapsed < 60.0;
    o.detail = "max state error " + sci(worst) + " (tol 1e-3), " + sci(elapsed) +
               " s (cap 60 s) over 50 states";
    return o;
}

// Criterion 3: the one-sparse split reconstructs each embedding at 1e-15
// entrywise, stays within the 2D-1 color budget, and every term
// exponential is unitary at 1e-12.
Outcome criterion_decomposition_soundness() {
    double worst_entry = 0.0, worst_unitary = 0.0;
    bool colors_ok = true;
    for (const SparseMatrix& u : fixtures()) {
        const SparseMatrix h = dilate(u).h;
        const std::vector<SparseMatrix> terms = split_one_sparse(h);

        SparseBuilder sum(h.dim());
        std::size_t diagonal_terms = 0;
        for (const SparseMatrix& term : terms) {
            bool diagonal = true;
            for (const Entry& e : term.entries()) {
                sum.add(e.row, e.col, e.amp);
                diagonal = diagonal && e.row == e.col;
            }
            if (diagonal) ++diagonal_terms;
        }
        const SparseMatrix rebuilt = sum.build();
        for (const Entry& e : h.entries())
            worst_entry = std::max(worst_entry, std::abs(rebuilt.at(e.row, e.col) - e.amp));
        for (const Entry& e : rebuilt.entries())
            worst_entry = std::max(worst_entry, std::abs(h.at(e.row, e.col) - e.amp));

        std::size_t max_degree = 0;
        {
            std::vector<std::size_t> degree(h.dim(), 0);
            for (const Entry& e : h.entries())
                if (e.row != e.col) ++degree[e.row];
            for (std::size_t deg : degree) max_degree = std::max(max_degree, deg);
        }
        const std::size_t off_diagonal_terms = terms.size() - diagonal_terms;
        if (max_degree > 0 && off_diagonal_terms > 2 * max_degree - 1) colors_ok = false;

        for (const SparseMatrix& term : terms) {
            const UnitaryReport rep = check_unitary(exp_term(term, kPi / 2.0), 1e-12);
            worst_unitary =
                std::max(worst_unitary, std::max(rep.max_col_defect, rep.max_row_defect));
        }
    }
    Outcome o;
    o.pass = worst_entry <= 1e-15 && colors_ok && worst_unitary <= 1e-12;
    o.detail = "max reconstruction error " + sci(worst_entry) + " (tol 1e-15), color budget " +
               (colors_ok ? "respected" : "EXCEEDED") + ", max factor unitarity defect " +
               sci(worst_unitary) + " (tol 1e-12)";
    return o;
}

// Criterion 4: on five embeddings of dimension <= 256, the measured error
// against repetition count follows the expected power law: log-log slope
// in [-1.25, -0.75] at order 1 and [-2.3, -1.7] at order 2 over r = 4..256.
Outcome criterion_error_scaling() {
    const std::vector<std::pair<std::size_t, std::size_t>> shapes = {
        {16, 2}, {16, 4}, {64, 2}, {64, 4}, {128, 2}};
    const double inf = std::numeric_limits<double>::infinity();
    double slope1_lo = inf, slope1_hi = -inf, slope2_lo = inf, slope2_hi = -inf;
    for (std::size_t f = 0; f < shapes.size(); ++f) {
        const SparseMatrix u =
            random_sparse_unitary(shapes[f].first, shapes[f].second, 4000 + f);
        const SparseMatrix h = dilate(u).h;
        const std::vector<SparseMatrix> terms = split_one_sparse(h);
        for (int order = 1; order <= 2; ++order) {
            std::vector<double> log_r, log_err;
            for (std::size_t r = 4; r <= 256; r *= 2) {
                FactoredEvolution fe;
                fe.dim = h.dim();
                fe.t = kPi / 2.0;
                fe.order = order;
                fe.r = r;
                fe.epsilon = 0.0;
                fe.slice = trotter_slice(terms, (kPi / 2.0) / static_cast<double>(r), order);
                const double err = measured_error(fe, h);
                if (err <= 1e-13) continue;
                log_r.push_back(std::log(static_cast<double>(r)));
                log_err.push_back(std::log(err));
            }
            // Least-squares slope of log error against log repetition count.
            const std::size_t n = log_r.size();
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mx += log_r[i];
                my += log_err[i];
            }
            mx /= static_cast<double>(n);
            my /= static_cast<double>(n);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += (log_r[i] - mx) * (log_err[i] - my);
                den += (log_r[i] - mx) * (log_r[i] - mx);
            }
            const double slope = num / den;
            if (order == 1) {
                slope1_lo = std::min(slope1_lo, slope);
                slope1_hi = std::max(slope1_hi, slope);
            } else {
                slope2_lo = std::min(slope2_lo, slope);
                slope2_hi = std::max(slope2_hi, slope);
            }
        }
    }
    Outcome o;
    const bool order1_ok = slope1_lo >= -1.25 && slope1_hi <= -0.75;
    const bool order2_ok = slope2_lo >= -2.3 && slope2_hi <= -1.7;
    o.pass = order1_ok && order2_ok;
    o.detail = "order-1 slopes in [" + sci(slope1_lo) + ", " + sci(slope1_hi) +
               "] (window [-1.25, -0.75]), order-2 slopes in [" + sci(slope2_lo) + ", " +
               sci(slope2_hi) + "] (window [-2.3, -1.7])";
    return o;
}

// Criterion 5: for 20 random well-formed rules, truncated runs lose at
// most s times the per-step bound in norm, and radii t and t + 2 agree on
// the shared support within the same bound. Under 120 seconds.
Outcome criterion_truncated_runs() {
    const auto start = std::chrono::steady_clock::now();
    double worst_loss_margin = 0.0, worst_mismatch_margin = 0.0;
    bool ok = true;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const std::size_t nq = 1 + k % 3;
        const TransitionRule rule = spusim::testing::random_well_formed_rule(nq, 2, 8000 + k);
        const long t = 2 + static_cast<long>(k % 5);
        const std::size_t s = 1 + k % static_cast<std::size_t>(t);

        std::mt19937_64 gen(9000 + k);
        QtmInput input;
        input.start_state = gen() % nq;
        for (long c = -t; c <= t; ++c)
            if (gen() & 1) input.tape[c] = 1;

        const double bound = static_cast<double>(s) * qtm_step_bound(t);
        const auto narrow = qtm_propagate(rule, input, s, t);
        double norm2 = 0.0;
        for (const auto& [idx, amp] : narrow) norm2 += std::norm(amp);
        const double loss = 1.0 - std::sqrt(norm2);
        if (std::abs(loss) > bound) ok = false;
        worst_loss_margin = std::max(worst_loss_margin, std::abs(loss) / bound);

        const auto wide = qtm_propagate(rule, input, s, t + 2);
        double diff2 = 0.0;
        for (const auto& [idx, amp] : narrow) {
            const std::size_t lifted = qtm_lift_index(rule, idx, t, t + 2);
            const auto it = wide.find(lifted);
            const cplx other = it == wide.end() ? cplx(0.0, 0.0) : it->second;
            diff2 += std::norm(amp - other);
        }
        const double mismatch = std::sqrt(diff2);
        if (mismatch > bound) ok = false;
        worst_mismatch_margin = std::max(worst_mismatch_margin, mismatch / bound);
    }
    const double elapsed = seconds_since(start);
    Outcome o;
    o.pass = ok && elapsed < 120.0;
    o.detail = "worst loss at " + sci(worst_loss_margin * 100.0) +
               "% of the certified bound, worst cross-radius mismatch at " +
               sci(worst_mismatch_margin * 100.0) + "%, " + sci(elapsed) + " s (cap 120 s)";
    return o;
}

// Criterion 6: truncated dimension (2t+1) |Q| |A|^(2t+1) exact and row
// nonzeros within 2 |A| |Q|, exhaustively for t <= 3 and |Q| <= 3.
Outcome criterion_truncation_shape() {
    bool ok = true;
    std::string first_failure;
    for (std::size_t nq = 1; nq <= 3; ++nq)
        for (long t = 1; t <= 3; ++t)
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                const TransitionRule rule =
                    spusim::testing::random_well_formed_rule(nq, 2, 8700 + 10 * nq + seed);
                const SparseMatrix m = qtm_truncate(rule, t);
                const std::size_t span = static_cast<std::size_t>(2 * t + 1);
                const std::size_t expect = span * nq * (std::size_t{1} << span);
                if (m.dim() != expect || m.max_row_nnz() > 2 * 2 * nq) {
                    ok = false;
                    if (first_failure.empty())
                        first_failure = " first failure at |Q|=" + std::to_string(nq) +
                                        ", t=" + std::to_string(t);
                }
            }
    Outcome o;
    o.pass = ok;
    o.detail = "dimension formula and row budget over |Q| in 1..3, t in 1..3, three rules each" +
               first_failure;
    return o;
}

// Criterion 7: every cycle step up to n = 512 is unitary with exactly two
// nonzeros per row; one step from (0,0) splits mass between sites n-1 and
// 1; direct and trotterized runs agree within steps times epsilon.
Outcome criterion_walk() {
    bool ok = true;
    std::string first_failure;
    for (std::size_t n = 2; n <= 512; ++n) {
        const SparseMatrix w = walk_step(n);
        const UnitaryReport rep = check_unitary(w, 1e-12);
        bool rows_ok = w.max_row_nnz() == 2;
        for (std::size_t r = 0; rows_ok && r < w.dim(); ++r)
            rows_ok = w.row(r).size() == 2;
        if (!rep.is_unitary || !rows_ok) {
            ok = false;
            if (first_failure.empty())
                first_failure = " step matrix defect at n=" + std::to_string(n);
        }
    }
    for (std::size_t n : {2u, 8u, 512u}) {
        const WalkRunResult one = walk_run(n, StateVector::basis(2 * n, 0), 1);
        std::vector<double> expect(n, 0.0);
        expect[n - 1] += 0.5;
        expect[1 % n] += 0.5;
        for (std::size_t x = 0; x < n; ++x)
            if (std::abs(one.site_distribution[x] - expect[x]) > 1e-12) {
                ok = false;
                if (first_failure.empty())
                    first_failure = " one-step distribution off at n=" + std::to_string(n);
            }
    }
    const std::size_t steps = 10;
    const double epsilon = 1e-4;
    const StateVector v0 = StateVector::basis(32, 0);
    const WalkRunResult direct = walk_run(16, v0, steps);
    const WalkRunResult dilated = walk_run(16, v0, steps, "dilation", epsilon);
    const double method_gap = l2_distance(direct.state.amps, dilated.state.amps);
    if (method_gap > static_cast<double>(steps) * epsilon) {
        ok = false;
        if (first_failure.empty()) first_failure = " method disagreement";
    }
    Outcome o;
    o.pass = ok;
    o.detail = "all n <= 512 unitary at two nonzeros per row, method gap " + sci(method_gap) +
               " (tol " + sci(static_cast<double>(steps) * epsilon) + ")" + first_failure;
    return o;
}

// Criterion 8: for every partition of n <= 6 the generator relations hold
// at 1e-10, the dimension equals the hook-length count, and rows carry at
// most two nonzeros.
Outcome criterion_representations() {
    bool ok = true;
    double worst = 0.0;
    std::string first_failure;
    std::vector<std::vector<std::size_t>> shapes;
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::size_t> current;
        const std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining,
                                                                     std::size_t max_part) {
            if (remaining == 0) {
                shapes.push_back(current);
                return;
            }
            for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
                current.push_back(part);
                rec(remaining - part, part);
                current.pop_back();
            }
        };
        rec(n, n);
    }
    for (const auto& shape : shapes) {
        std::size_t n = 0;
        for (std::size_t part : shape) n += part;
        const std::size_t dim = tableau_basis(shape).size();
        if (dim != spusim::testing::hook_length_dim(shape)) {
            ok = false;
            if (first_failure.empty()) first_failure = " dimension mismatch";
        }
        const SymrepReport report = symrep_check(shape);
        worst = std::max(worst, report.max_residual);
        if (!report.passed) {
            ok = false;
            if (first_failure.empty()) first_failure = " " + report.detail;
        }
        for (std::size_t j = 1; n >= 2 && j + 1 <= n; ++j)
            if (symrep_generator(shape, j).max_row_nnz() > 2) {
                ok = false;
                if (first_failure.empty()) first_failure = " row budget exceeded";
            }
    }
    Outcome o;
    o.pass = ok;
    o.detail = "all partitions of 1..6, max relation residual " + sci(worst) +
               " (tol 1e-10)" + first_failure;
    return o;
}

// Criterion 9: the evolve then verify pipeline certifies the requested
// target and both runs are byte-identical under a fixed seed once wall
// time is dropped from the manifest.
Outcome criterion_cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spusim_acceptance_cli";
    bool ok = true;
    std::string detail;
    std::vector<std::string> file_bytes;
    std::vector<nlohmann::json> manifests;
    for (int pass = 0; pass < 2 && ok; ++pass) {
        fs::remove_all(dir);
        fs::create_directories(dir);
        const auto at = [&](const char* name) { return (dir / name).string(); };
        std::ostringstream out, err;
        const auto call = [&](const std::vector<std::string>& args) {
            return cli::dispatch(args, out, err);
        };
        if (call({"random-unitary", "--dim", "16", "--max-per-line", "3", "--seed", "77",
                  "--out", at("u.mtx")}) != 0 ||
            call({"dilate", at("u.mtx"), at("h.mtx")}) != 0 ||
            call({"evolve", "--h", at("h.mtx"), "--t", "1.5707963267948966", "--epsilon",
                  "1e-3", "--order", "2", "--out", at("factors.json"), "--manifest",
                  at("run.json")}) != 0) {
            ok = false;
            detail = "pipeline stage failed: " + err.str();
            break;
        }
        const int verify_code = call({"verify", "--u", at("u.mtx"), "--factors",
                                      at("factors.json")});
        if (verify_code != 0) {
            ok = false;
            detail = "verify exited " + std::to_string(verify_code) + ": " + err.str();
            break;
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir)) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        std::string bytes;
        for (const fs::path& file : files) {
            if (file.filename() == "run.json") continue;
            std::ifstream in(file);
            std::ostringstream buf;
            buf << file.filename().string() << "\n" << in.rdbuf();
            bytes += buf.str();
        }
        file_bytes.push_back(bytes);
        // Wall time is the one intentionally nondeterministic manifest field.
        std::ifstream in(at("run.json"));
        nlohmann::json manifest;
        in >> manifest;
        manifest.erase("wall_time_ms");
        manifests.push_back(std::move(manifest));
    }
    if (ok && (file_bytes[0] != file_bytes[1] || manifests[0] != manifests[1])) {
        ok = false;
        detail = "repeat run differed";
    }
    if (ok) detail = "verify certified the 1e-3 target; repeat run byte-identical";
    fs::remove_all(dir);
    Outcome o;
    o.pass = ok;
    o.detail = detail;
    return o;
}

} // namespace

int main() {
    struct Row {
        const char* label;
        Outcome (*check)();
    };
    const Row rows[] = {
        {"quarter-period closed form matches the embedding", criterion_quarter_period},
        {"trotterized application reaches the state-norm target",
         criterion_end_to_end_application},
        {"one-sparse decomposition is sound", criterion_decomposition_soundness},
        {"product-formula error follows the order scaling", criterion_error_scaling},
        {"truncated tape runs respect the certified loss bound", criterion_truncated_runs},
        {"truncated tape matrix has the exact shape and sparsity",
         criterion_truncation_shape},
        {"coined walk step, distribution, and methods agree", criterion_walk},
        {"representation generators satisfy all relations", criterion_representations},
        {"pipeline certifies its target and reproduces byte-for-byte",
         criterion_cli_determinism},
    };
    int failures = 0;
    int id = 0;
    for (const Row& row : rows) {
        ++id;
        const Outcome o = row.check();
        if (!o.pass) ++failures;
        std::printf("criterion %d: %s - %s (%s)\n", id, o.pass ? "PASS" : "FAIL", row.label,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
