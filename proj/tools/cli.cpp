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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "spusim/dense.hpp"
#include "spusim/dilation.hpp"
#include "spusim/io.hpp"
#include "spusim/qtm.hpp"
#include "spusim/random_unitary.hpp"
#include "spusim/statevec.hpp"
#include "spusim/symrep.hpp"
#include "spusim/trotter.hpp"
#include "spusim/walk.hpp"

namespace spusim::cli {

namespace {

std::string fmt(double x) {
    if (x == 0.0) x = 0.0; // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

/// Thrown by handlers when a requested accuracy target is not met; maps
/// to exit code 3 instead of the generic validation failure.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void finalize(RunManifest& manifest, const Timer& timer, const std::string& manifest_path) {
    manifest.wall_time_ms = timer.elapsed_ms();
    if (!manifest_path.empty()) write_run_manifest(manifest, manifest_path);
}

std::size_t name_index(const std::vector<std::string>& names, const std::string& name,
                       const char* kind) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw std::invalid_argument(std::string("unknown ") + kind + " name \"" + name + "\"");
    return static_cast<std::size_t>(it - names.begin());
}

nlohmann::json state_to_json(const StateVector& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (const cplx& a : s.amps) amps.push_back({a.real(), a.imag()});
    return nlohmann::json{{"dim", s.dim()}, {"amps", std::move(amps)}};
}

std::vector<std::size_t> parse_partition(const std::string& text) {
    std::vector<std::size_t> parts;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            const long value = std::stol(token);
            if (value <= 0) throw std::invalid_argument("");
            parts.push_back(static_cast<std::size_t>(value));
        } catch (const std::exception&) {
            throw std::invalid_argument("partition part \"" + token +
                                        "\" is not a positive integer");
        }
    }
    if (parts.empty()) throw std::invalid_argument("partition \"" + text + "\" is empty");
    return parts;
}

void print_matrix_market(const SparseMatrix& m, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << m.dim() << " " << m.dim() << " " << m.nnz() << "\n";
    for (const Entry& e : m.entries())
        out << (e.row + 1) << " " << (e.col + 1) << " " << fmt(e.amp.real()) << " "
            << fmt(e.amp.imag()) << "\n";
}

} // namespace

void write_run_manifest(const RunManifest& m, const std::string& path) {
    nlohmann::json j;
    j["command"] = m.command;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["parameters"] = m.parameters;
    if (m.certified_error)
        j["certified_error"] = *m.certified_error;
    else
        j["certified_error"] = nullptr;
    j["wall_time_ms"] = m.wall_time_ms;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

RunManifest read_run_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.inputs = j.at("inputs").get<std::vector<std::string>>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.parameters = j.at("parameters");
        if (!j.at("certified_error").is_null())
            m.certified_error = j.at("certified_error").get<double>();
        m.wall_time_ms = j.at("wall_time_ms").get<double>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse-unitary simulation via Hermitian embeddings and product formulas",
                 "spusim"};
    app.require_subcommand(1);

    std::string manifest_path;

    std::string dilate_in, dilate_out;
    CLI::App* dilate_cmd =
        app.add_subcommand("dilate", "Write the Hermitian embedding of a unitary");
    dilate_cmd->add_option("input", dilate_in, "Unitary, Matrix Market")->required();
    dilate_cmd->add_option("output", dilate_out, "Embedding destination")->required();

    std::string evolve_h, evolve_out;
    double evolve_t = 0.0, evolve_eps = 1e-3;
    int evolve_order = 2;
    CLI::App* evolve_cmd =
        app.add_subcommand("evolve", "Trotterize a Hermitian generator to a target accuracy");
    // The generator flag is spelled --h, so this subcommand keeps only the
    // long help spelling.
    evolve_cmd->set_help_flag("--help", "Print this help message and exit");
    evolve_cmd->add_option("--h", evolve_h, "Hermitian generator, Matrix Market")->required();
    evolve_cmd->add_option("--t", evolve_t, "Evolution time")->required();
    evolve_cmd->add_option("--epsilon", evolve_eps, "Spectral-norm target");
    evolve_cmd->add_option("--order", evolve_order, "Product-formula order (1 or 2)")
        ->check(CLI::Range(1, 2));
    evolve_cmd->add_option("--out", evolve_out, "Factor manifest destination")->required();

    std::string impl_u, impl_state, impl_method = "trotter", impl_out;
    double impl_eps = 1e-3;
    int impl_order = 2;
    CLI::App* impl_cmd =
        app.add_subcommand("implement", "Apply a unitary to a state via its embedding");
    impl_cmd->add_option("--u", impl_u, "Unitary, Matrix Market")->required();
    impl_cmd->add_option("--state", impl_state, "State JSON")->required();
    impl_cmd->add_option("--method", impl_method, "analytic or trotter")
        ->check(CLI::IsMember({"analytic", "trotter"}));
    impl_cmd->add_option("--epsilon", impl_eps, "Trotter target");
    impl_cmd->add_option("--order", impl_order, "Product-formula order (1 or 2)")
        ->check(CLI::Range(1, 2));
    impl_cmd->add_option("--out", impl_out, "Result state destination (stdout if absent)");

    std::string verify_u, verify_factors;
    bool verify_phase_invariant = false;
    double verify_eps = -1.0;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Certify factored evolution against a unitary's embedding");
    verify_cmd->add_option("--u", verify_u, "Unitary, Matrix Market")->required();
    verify_cmd->add_option("--factors", verify_factors, "Factor manifest from evolve")
        ->required();
    verify_cmd->add_flag("--phase-invariant", verify_phase_invariant,
                         "Minimize over a global phase");
    verify_cmd->add_option("--epsilon", verify_eps,
                           "Override the acceptance threshold (default: the manifest target)");

    std::string qtm_rule, qtm_method = "direct", qtm_input, qtm_out;
    std::size_t qtm_steps = 0;
    long qtm_radius = -1;
    double qtm_eps = 1e-3;
    CLI::App* qtm_cmd = app.add_subcommand("qtm", "Tape-machine front end");
    qtm_cmd->require_subcommand(1);
    CLI::App* qtm_run_cmd = qtm_cmd->add_subcommand("run", "Run truncated steps of a rule");
    qtm_run_cmd->add_option("--rule", qtm_rule, "Transition rule JSON")->required();
    qtm_run_cmd->add_option("--steps", qtm_steps, "Step count")->required();
    qtm_run_cmd->add_option("--radius", qtm_radius,
                            "Truncation radius (default: steps + 1)");
    qtm_run_cmd->add_option("--method", qtm_method, "direct or dilation")
        ->check(CLI::IsMember({"direct", "dilation"}));
    qtm_run_cmd->add_option("--epsilon", qtm_eps, "Trotter target for the dilation method");
    qtm_run_cmd->add_option("--input", qtm_input,
                            "Start configuration JSON (default: first state, blank tape)");
    qtm_run_cmd->add_option("--out", qtm_out, "Result state destination");

    std::string walk_config, walk_method = "direct", walk_out, walk_state_out;
    double walk_eps = 1e-4;
    CLI::App* walk_cmd = app.add_subcommand("walk", "Coined-walk front end");
    walk_cmd->require_subcommand(1);
    CLI::App* walk_run_cmd = walk_cmd->add_subcommand("run", "Run walk steps on a cycle");
    walk_run_cmd->add_option("--config", walk_config, "Walk configuration JSON")->required();
    walk_run_cmd->add_option("--method", walk_method, "direct or dilation")
        ->check(CLI::IsMember({"direct", "dilation"}));
    walk_run_cmd->add_option("--epsilon", walk_eps, "Trotter target for the dilation method");
    walk_run_cmd->add_option("--out", walk_out,
                             "Site distribution destination (stdout if absent)");
    walk_run_cmd->add_option("--state-out", walk_state_out, "Full state destination");

    std::string symrep_partition;
    long symrep_gen = -1;
    bool symrep_do_check = false;
    std::string symrep_out;
    CLI::App* symrep_cmd =
        app.add_subcommand("symrep", "Adjacent-transposition representation matrices");
    symrep_cmd->add_option("--partition", symrep_partition, "Comma-separated shape, e.g. 2,1")
        ->required();
    symrep_cmd->add_option("--generator", symrep_gen, "Generator index j (1-based)");
    symrep_cmd->add_flag("--check", symrep_do_check, "Verify the generator relations");
    symrep_cmd->add_option("--out", symrep_out, "Generator destination (stdout if absent)");

    std::string rand_out;
    std::size_t rand_dim = 0, rand_max_per_line = 2;
    std::uint64_t rand_seed = 0;
    CLI::App* rand_cmd =
        app.add_subcommand("random-unitary", "Seeded random sparse unitary fixture");
    rand_cmd->add_option("--dim", rand_dim, "Dimension")->required();
    rand_cmd->add_option("--max-per-line", rand_max_per_line,
                         "Nonzero budget per row and column");
    rand_cmd->add_option("--seed", rand_seed, "Generator seed")->required();
    rand_cmd->add_option("--out", rand_out, "Destination, Matrix Market")->required();

    for (CLI::App* sub : {dilate_cmd, evolve_cmd, impl_cmd, verify_cmd, symrep_cmd, rand_cmd})
        sub->add_option("--manifest", manifest_path, "Write a run manifest to this path");
    for (CLI::App* sub : {qtm_run_cmd, walk_run_cmd})
        sub->add_option("--manifest", manifest_path, "Write a run manifest to this path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "spusim: " << e.what() << "\n";
        return 2;
    }

    const Timer timer;
    try {
        if (dilate_cmd->parsed()) {
            RunManifest manifest{"dilate", {dilate_in}, {dilate_out},
                                 nlohmann::json::object(), {}, 0.0};
            const SparseMatrix u = read_matrix_market(dilate_in);
            const Dilation d = dilate(u);
            write_matrix_market(d.h, dilate_out);
            out << "wrote Hermitian embedding of dimension " << d.h.dim() << " to "
                << dilate_out << "\n";
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        if (evolve_cmd->parsed()) {
            RunManifest manifest{"evolve",
                                 {evolve_h},
                                 {evolve_out},
                                 {{"epsilon", evolve_eps}, {"order", evolve_order},
                                  {"t", evolve_t}},
                                 {},
                                 0.0};
            const SparseMatrix h = read_matrix_market(evolve_h);
            FactoredEvolution fe;
            try {
                fe = trotterize(h, evolve_t, evolve_eps, evolve_order);
            } catch (const std::runtime_error& e) {
                throw AccuracyError(e.what());
            }
            write_evolution(fe, evolve_out);
            manifest.certified_error = fe.certified_bound;
            out << "r=" << fe.r << " factors=" << fe.factor_count() << " certified error "
                << fmt(fe.certified_bound) << "\n";
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        if (impl_cmd->parsed()) {
            RunManifest manifest{"implement",
                                 {impl_u, impl_state},
                                 {},
                                 {{"epsilon", impl_eps}, {"method", impl_method},
                                  {"order", impl_order}},
                                 {},
                                 0.0};
            const SparseMatrix u = read_matrix_market(impl_u);
            const StateVector psi = read_state(impl_state);
            StateVector result;
            if (impl_method == "analytic") {
                result = apply_via_dilation(u, psi);
            } else {
                ImplementedUnitary impl;
                try {
                    impl = implement_unitary(u, impl_eps, impl_order);
                } catch (const std::runtime_error& e) {
                    throw AccuracyError(e.what());
                }
                manifest.certified_error = impl.evolution.certified_bound;
                result = run_implemented(impl, psi);
            }
            if (impl_out.empty()) {
                out << state_to_json(result).dump(2) << "\n";
            } else {
                write_state(result, impl_out);
                manifest.outputs.push_back(impl_out);
                out << "wrote result state to " << impl_out;
                if (manifest.certified_error)
                    out << " (certified error " << fmt(*manifest.certified_error) << ")";
                out << "\n";
            }
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        if (verify_cmd->parsed()) {
            RunManifest manifest{"verify",
                                 {verify_u, verify_factors},
                                 {},
                                 {{"phase_invariant", verify_phase_invariant}},
                                 {},
                                 0.0};
            const SparseMatrix u = read_matrix_market(verify_u);
            const FactoredEvolution fe = read_evolution(verify_factors);
            if (fe.dim != 2 * u.dim())
                throw std::invalid_argument(
                    "factor dimension " + std::to_string(fe.dim) + " does not match the " +
                    "embedding of " + verify_u + " (expected " + std::to_string(2 * u.dim()) +
                    ")");
            const Dilation d = dilate(u);
            double dist = 0.0;
            if (verify_phase_invariant) {
                DenseMatrix power = DenseMatrix::identity(fe.dim);
                const DenseMatrix base = slice_product_dense(fe);
                for (std::size_t k = 0; k < fe.r; ++k) power = matmul(base, power);
                dist = phase_invariant_distance(power, to_dense(analytic_evolution(d.h, fe.t)));
            } else {
                dist = measured_error(fe, d.h);
            }
            const double threshold = verify_eps >= 0.0 ? verify_eps : fe.epsilon;
            manifest.parameters["epsilon"] = threshold;
            manifest.certified_error = dist;
            out << "certified distance " << fmt(dist) << " (target " << fmt(threshold)
                << ")\n";
            finalize(manifest, timer, manifest_path);
            if (dist > threshold)
                throw AccuracyError("certified distance " + fmt(dist) +
                                    " exceeds the target " + fmt(threshold));
            return 0;
        }

        if (qtm_run_cmd->parsed()) {
            const long radius = qtm_radius >= 0 ? qtm_radius
                                                : static_cast<long>(qtm_steps) + 1;
            RunManifest manifest{"qtm run",
                                 {qtm_rule},
                                 {},
                                 {{"method", qtm_method}, {"radius", radius},
                                  {"steps", qtm_steps}},
                                 {},
                                 0.0};
            if (qtm_method == "dilation") manifest.parameters["epsilon"] = qtm_eps;
            const TransitionRule rule = read_rule(qtm_rule);
            QtmInput input;
            if (!qtm_input.empty()) {
                manifest.inputs.push_back(qtm_input);
                std::ifstream in(qtm_input);
                if (!in) throw std::runtime_error("cannot open " + qtm_input);
                nlohmann::json j;
                try {
                    in >> j;
                    input.start_state =
                        name_index(rule.states, j.at("state").get<std::string>(), "state");
                    if (j.contains("tape"))
                        for (const auto& [cell, symbol] : j.at("tape").items()) {
                            long c = 0;
                            try {
                                c = std::stol(cell);
                            } catch (const std::exception&) {
                                throw std::runtime_error(qtm_input + ": tape cell key \"" +
                                                         cell + "\" is not an integer");
                            }
                            input.tape[c] = name_index(rule.alphabet,
                                                       symbol.get<std::string>(), "symbol");
                        }
                } catch (const nlohmann::json::exception& e) {
                    throw std::runtime_error(qtm_input + ": " + e.what());
                }
            }
            StateVector state;
            try {
                state = qtm_run(rule, input, qtm_steps, radius, qtm_method, qtm_eps);
            } catch (const std::runtime_error& e) {
                throw AccuracyError(e.what());
            }
            const double bound =
                static_cast<double>(qtm_steps) * qtm_step_bound(radius);
            out << "dim " << state.dim() << ", norm " << fmt(state.norm())
                << ", certified per-run loss bound " << fmt(bound) << "\n";
            if (!qtm_out.empty()) {
                write_state(state, qtm_out);
                manifest.outputs.push_back(qtm_out);
                out << "wrote result state to " << qtm_out << "\n";
            }
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        if (walk_run_cmd->parsed()) {
            RunManifest manifest{"walk run",
                                 {walk_config},
                                 {},
                                 {{"method", walk_method}},
                                 {},
                                 0.0};
            if (walk_method == "dilation") manifest.parameters["epsilon"] = walk_eps;
            std::ifstream in(walk_config);
            if (!in) throw std::runtime_error("cannot open " + walk_config);
            nlohmann::json j;
            std::size_t n = 0, steps = 0, x = 0, coin = 0;
            try {
                in >> j;
                n = j.at("n").get<std::size_t>();
                steps = j.at("steps").get<std::size_t>();
                x = j.at("start").at("x").get<std::size_t>();
                coin = j.at("start").at("coin").get<std::size_t>();
            } catch (const nlohmann::json::exception& e) {
                throw std::runtime_error(walk_config + ": " + e.what());
            }
            if (n < 2 || x >= n || coin > 1)
                throw std::invalid_argument(walk_config +
                                            ": start position or coin out of range");
            WalkRunResult result;
            try {
                result = walk_run(n, StateVector::basis(2 * n, 2 * x + coin), steps,
                                  walk_method, walk_eps);
            } catch (const std::runtime_error& e) {
                throw AccuracyError(e.what());
            }
            nlohmann::json dist;
            dist["n"] = n;
            dist["steps"] = steps;
            dist["distribution"] = result.site_distribution;
            if (walk_out.empty()) {
                out << dist.dump(2) << "\n";
            } else {
                std::ofstream dist_file(walk_out);
                if (!dist_file)
                    throw std::runtime_error("cannot open " + walk_out + " for writing");
                dist_file << dist.dump(2) << "\n";
                manifest.outputs.push_back(walk_out);
                out << "wrote site distribution to " << walk_out << "\n";
            }
            if (!walk_state_out.empty()) {
                write_state(result.state, walk_state_out);
                manifest.outputs.push_back(walk_state_out);
            }
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        if (symrep_cmd->parsed()) {
            if (symrep_gen < 0 && !symrep_do_check)
                throw std::invalid_argument("symrep needs --generator and/or --check");
            RunManifest manifest{"symrep",
                                 {},
                                 {},
                                 {{"check", symrep_do_check},
                                  {"partition", symrep_partition}},
                                 {},
                                 0.0};
            const std::vector<std::size_t> shape = parse_partition(symrep_partition);
            if (symrep_gen >= 0) {
                manifest.parameters["generator"] = symrep_gen;
                const SparseMatrix m =
                    symrep_generator(shape, static_cast<std::size_t>(symrep_gen));
                if (symrep_out.empty()) {
                    print_matrix_market(m, out);
                } else {
                    write_matrix_market(m, symrep_out);
                    manifest.outputs.push_back(symrep_out);
                    out << "wrote generator " << symrep_gen << " (dimension " << m.dim()
                        << ") to " << symrep_out << "\n";
                }
            }
            if (symrep_do_check) {
                const SymrepReport report = symrep_check(shape);
                manifest.certified_error = report.max_residual;
                if (!report.passed)
                    throw std::invalid_argument("generator relations fail: " + report.detail);
                out << "all generator relations hold (dimension "
                    << tableau_basis(shape).size() << ", max residual "
                    << fmt(report.max_residual) << ")\n";
            }
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        if (rand_cmd->parsed()) {
            RunManifest manifest{"random-unitary",
                                 {},
                                 {rand_out},
                                 {{"dim", rand_dim}, {"max_per_line", rand_max_per_line},
                                  {"seed", rand_seed}},
                                 {},
                                 0.0};
            const SparseMatrix u = random_sparse_unitary(rand_dim, rand_max_per_line, rand_seed);
            write_matrix_market(u, rand_out);
            out << "wrote random sparse unitary (dimension " << u.dim() << ", budget "
                << rand_max_per_line << ") to " << rand_out << "\n";
            finalize(manifest, timer, manifest_path);
            return 0;
        }

        err << "spusim: no subcommand selected\n";
        return 2;
    } catch (const AccuracyError& e) {
        err << "spusim: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "spusim: " << e.what() << "\n";
        return 2;
    }
}

} // namespace spusim::cli
