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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cli.hpp"
#include "spusim/dense.hpp"
#include "spusim/io.hpp"
#include "spusim/statevec.hpp"

using namespace spusim;
using spusim::cli::dispatch;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

/// Fresh scratch directory per test case.
class Scratch {
  public:
    Scratch() {
        dir_ = std::filesystem::temp_directory_path() /
               ("spusim_cli_" + std::to_string(counter_++));
        std::filesystem::create_directories(dir_);
    }
    ~Scratch() { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

  private:
    static inline int counter_ = 0;
    std::filesystem::path dir_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("embedding a trivial unitary writes the pinned file") {
    Scratch scratch;
    const std::string in = scratch.path("id1.mtx");
    {
        std::ofstream f(in);
        f << "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n";
    }
    const std::string out_path = scratch.path("h.mtx");
    const Run r = run({"dilate", in, out_path});
    CHECK(r.code == 0);
    CHECK(slurp(out_path) ==
          "%%MatrixMarket matrix coordinate complex general\n2 2 2\n1 2 1 0\n2 1 1 0\n");
}

TEST_CASE("factored evolution certifies its own target end to end") {
    Scratch scratch;
    const std::string u_path = scratch.path("u.mtx");
    const std::string h_path = scratch.path("h.mtx");
    const std::string factors = scratch.path("factors.json");
    REQUIRE(run({"random-unitary", "--dim", "8", "--max-per-line", "2", "--seed", "11",
                 "--out", u_path})
                .code == 0);
    REQUIRE(run({"dilate", u_path, h_path}).code == 0);
    const Run evolve = run({"evolve", "--h", h_path, "--t", "1.5707963267948966",
                            "--epsilon", "1e-2", "--order", "2", "--out", factors});
    REQUIRE(evolve.code == 0);
    CHECK(evolve.out.find("certified error") != std::string::npos);

    const Run verify = run({"verify", "--u", u_path, "--factors", factors});
    CHECK(verify.code == 0);
    CHECK(verify.out.find("certified distance") != std::string::npos);

    const Run phase = run({"verify", "--u", u_path, "--factors", factors,
                           "--phase-invariant"});
    CHECK(phase.code == 0);

    const Run strict = run({"verify", "--u", u_path, "--factors", factors, "--epsilon",
                            "1e-14"});
    CHECK(strict.code == 3);
    CHECK(strict.err.find("exceeds") != std::string::npos);
}

TEST_CASE("implement matches the dense product on both methods") {
    Scratch scratch;
    const std::string u_path = scratch.path("u.mtx");
    REQUIRE(run({"random-unitary", "--dim", "8", "--max-per-line", "2", "--seed", "3",
                 "--out", u_path})
                .code == 0);
    const std::string psi_path = scratch.path("psi.json");
    write_state(StateVector::basis(8, 5), psi_path);

    const SparseMatrix u = read_matrix_market(u_path);
    const std::vector<cplx> expect = matvec(u, StateVector::basis(8, 5).amps);

    for (const std::string method : {"analytic", "trotter"}) {
        const std::string out_path = scratch.path("out_" + method + ".json");
        const Run r = run({"implement", "--u", u_path, "--state", psi_path, "--method",
                           method, "--epsilon", "1e-3", "--out", out_path});
        REQUIRE(r.code == 0);
        const StateVector got = read_state(out_path);
        CHECK(l2_distance(got.amps, expect) <= (method == "analytic" ? 1e-9 : 1e-3));
    }
}

TEST_CASE("tape machine runs reject steps at the radius with a diagnostic") {
    Scratch scratch;
    const std::string rule = scratch.path("rule.json");
    {
        std::ofstream f(rule);
        f << R"({"states": ["go"], "alphabet": ["0", "1"], "blank": "0",
                 "allow_stay": false,
                 "delta": [
                   {"q": "go", "sigma": "0", "q2": "go", "sigma2": "0", "dir": "R",
                    "amp": [1, 0]},
                   {"q": "go", "sigma": "1", "q2": "go", "sigma2": "1", "dir": "R",
                    "amp": [1, 0]}]})";
    }
    const Run bad = run({"qtm", "run", "--rule", rule, "--steps", "3", "--radius", "2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("radius") != std::string::npos);

    const std::string state_out = scratch.path("state.json");
    const std::string input = scratch.path("input.json");
    {
        std::ofstream f(input);
        f << R"({"state": "go", "tape": {"0": "1"}})";
    }
    const Run good = run({"qtm", "run", "--rule", rule, "--steps", "2", "--input", input,
                          "--out", state_out});
    CHECK(good.code == 0);
    CHECK(good.out.find("norm 1") != std::string::npos);
    CHECK(read_state(state_out).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("walk distribution file carries the one-step split") {
    Scratch scratch;
    const std::string config = scratch.path("walk.json");
    {
        std::ofstream f(config);
        f << R"({"n": 8, "steps": 1, "start": {"x": 0, "coin": 0}})";
    }
    const std::string out_path = scratch.path("dist.json");
    const Run r = run({"walk", "run", "--config", config, "--out", out_path});
    REQUIRE(r.code == 0);
    const nlohmann::json dist = nlohmann::json::parse(slurp(out_path));
    REQUIRE(dist.at("distribution").size() == 8);
    CHECK(dist.at("distribution")[7].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.at("distribution")[1].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.at("distribution")[0].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("representation checks print and matrices reach stdout") {
    const Run check = run({"symrep", "--partition", "2,1", "--check"});
    CHECK(check.code == 0);
    CHECK(check.out.find("all generator relations hold") != std::string::npos);

    const Run gen = run({"symrep", "--partition", "2,1", "--generator", "1"});
    CHECK(gen.code == 0);
    CHECK(gen.out.find("%%MatrixMarket") != std::string::npos);
    CHECK(gen.out.find("2 2 -1 0") != std::string::npos);

    const Run neither = run({"symrep", "--partition", "2,1"});
    CHECK(neither.code == 2);
    const Run malformed = run({"symrep", "--partition", "1,2", "--check"});
    CHECK(malformed.code == 2);
}

TEST_CASE("argument errors produce one-line diagnostics and exit 2") {
    const Run unknown = run({"transmogrify"});
    CHECK(unknown.code == 2);
    CHECK(!unknown.err.empty());

    const Run unseeded = run({"random-unitary", "--dim", "8", "--out", "/tmp/x.mtx"});
    CHECK(unseeded.code == 2);
    CHECK(unseeded.err.find("--seed") != std::string::npos);

    const Run badflag = run({"dilate", "--frobnicate"});
    CHECK(badflag.code == 2);
}

TEST_CASE("run manifests are deterministic apart from wall time") {
    Scratch scratch;
    const std::string u_path = scratch.path("u.mtx");
    nlohmann::json first, second;
    for (int pass = 0; pass < 2; ++pass) {
        const std::string manifest = scratch.path("run" + std::to_string(pass) + ".json");
        REQUIRE(run({"random-unitary", "--dim", "8", "--max-per-line", "2", "--seed", "9",
                     "--out", u_path, "--manifest", manifest})
                    .code == 0);
        nlohmann::json j = nlohmann::json::parse(slurp(manifest));
        j.erase("wall_time_ms");
        (pass == 0 ? first : second) = std::move(j);
    }
    CHECK(first == second);

    const cli::RunManifest m = cli::read_run_manifest(scratch.path("run0.json"));
    const std::string copy = scratch.path("copy.json");
    cli::write_run_manifest(m, copy);
    CHECK(nlohmann::json::parse(slurp(copy)) == nlohmann::json::parse(slurp(scratch.path("run0.json"))));
}
