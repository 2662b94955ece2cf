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

#include "spusim/io.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace spusim {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string fmt(double x) {
    if (x == 0.0) x = 0.0; // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

void write_matrix_market(const SparseMatrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << m.dim() << " " << m.dim() << " " << m.nnz() << "\n";
    for (const Entry& e : m.entries()) {
        out << (e.row + 1) << " " << (e.col + 1) << " " << fmt(e.amp.real()) << " "
            << fmt(e.amp.imag()) << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

SparseMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) fail(path, 1, "empty file");
    ++lineno;

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") fail(path, lineno, "missing %%MatrixMarket banner");
    if (lower(object) != "matrix") fail(path, lineno, "unsupported object '" + object + "'");
    if (lower(format) != "coordinate") {
        fail(path, lineno, "unsupported format '" + format + "' (coordinate required)");
    }
    field = lower(field);
    if (field != "complex" && field != "real" && field != "integer") {
        fail(path, lineno, "unsupported field '" + field + "'");
    }
    if (lower(symmetry) != "general") {
        fail(path, lineno, "unsupported symmetry '" + symmetry + "' (general required)");
    }

    // Comment block, then the size line.
    std::size_t rows = 0, cols = 0, nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) fail(path, lineno + 1, "missing size line");
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> nnz)) fail(path, lineno, "malformed size line");
        break;
    }
    if (rows != cols) {
        fail(path, lineno,
             "matrix is " + std::to_string(rows) + " x " + std::to_string(cols) +
                 " but a square matrix is required");
    }

    std::vector<Entry> entries;
    entries.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        if (!std::getline(in, line)) {
            fail(path, lineno + 1,
                 "expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
        }
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            --k;
            continue;
        }
        std::istringstream es(line);
        long long r = 0, c = 0;
        double re = 0.0, im = 0.0;
        if (!(es >> r >> c)) fail(path, lineno, "malformed entry indices");
        if (field == "complex") {
            if (!(es >> re >> im)) fail(path, lineno, "malformed complex entry values");
        } else {
            if (!(es >> re)) fail(path, lineno, "malformed entry value");
        }
        if (r < 1 || c < 1 || static_cast<std::size_t>(r) > rows ||
            static_cast<std::size_t>(c) > cols) {
            fail(path, lineno, "index (" + std::to_string(r) + ", " + std::to_string(c) +
                                   ") outside 1.." + std::to_string(rows));
        }
        entries.push_back({static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1),
                           cplx(re, im)});
    }

    try {
        return SparseMatrix::from_entries(rows, std::move(entries));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_state(const StateVector& s, const std::string& path) {
    nlohmann::json j;
    j["dim"] = s.dim();
    auto amps = nlohmann::json::array();
    for (const cplx& a : s.amps) amps.push_back({a.real(), a.imag()});
    j["amps"] = std::move(amps);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

StateVector read_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (!j.contains("dim") || !j.contains("amps")) {
        throw std::runtime_error(path + ": state requires 'dim' and 'amps'");
    }
    const std::size_t dim = j.at("dim").get<std::size_t>();
    const auto& amps_json = j.at("amps");
    if (!amps_json.is_array() || amps_json.size() != dim) {
        throw std::runtime_error(path + ": 'amps' must list exactly 'dim' pairs");
    }
    std::vector<cplx> amps;
    amps.reserve(dim);
    for (const auto& pair : amps_json) {
        if (!pair.is_array() || pair.size() != 2) {
            throw std::runtime_error(path + ": each amplitude must be a [re, im] pair");
        }
        amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    const double n = norm(amps);
    return StateVector(std::move(amps), std::abs(n - 1.0) <= 1e-10);
}

void write_evolution(const FactoredEvolution& fe, const std::string& manifest_path) {
    const std::filesystem::path manifest(manifest_path);
    const std::filesystem::path dir = manifest.parent_path();
    const std::string stem = manifest.stem().string();

    std::vector<std::string> factor_files;
    factor_files.reserve(fe.slice.size());
    for (std::size_t k = 0; k < fe.slice.size(); ++k) {
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), ".factor_%03zu.mtx", k);
        const std::string name = stem + suffix;
        write_matrix_market(fe.slice[k], (dir / name).string());
        factor_files.push_back(name);
    }

    nlohmann::json j;
    j["dim"] = fe.dim;
    j["t"] = fe.t;
    j["order"] = fe.order;
    j["r"] = fe.r;
    j["epsilon"] = fe.epsilon;
    j["certified_bound"] = fe.certified_bound;
    j["factor_files"] = factor_files;
    std::ofstream out(manifest_path);
    if (!out) throw std::runtime_error("cannot open " + manifest_path + " for writing");
    out << j.dump(2) << "\n";
}

FactoredEvolution read_evolution(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open " + manifest_path + " for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(manifest_path + ": " + e.what());
    }
    for (const char* key : {"dim", "t", "order", "r", "epsilon", "factor_files"}) {
        if (!j.contains(key)) {
            throw std::runtime_error(manifest_path + ": manifest missing '" +
                                     std::string(key) + "'");
        }
    }

    FactoredEvolution fe;
    fe.dim = j.at("dim").get<std::size_t>();
    fe.t = j.at("t").get<double>();
    fe.order = j.at("order").get<int>();
    fe.r = j.at("r").get<std::size_t>();
    fe.epsilon = j.at("epsilon").get<double>();
    fe.certified_bound = j.value("certified_bound", 0.0);
    if (fe.order != 1 && fe.order != 2) {
        throw std::runtime_error(manifest_path + ": order must be 1 or 2");
    }
    if (fe.r == 0) throw std::runtime_error(manifest_path + ": r must be at least 1");

    const std::filesystem::path dir = std::filesystem::path(manifest_path).parent_path();
    for (const auto& name : j.at("factor_files")) {
        const std::filesystem::path p(name.get<std::string>());
        const std::string resolved = p.is_absolute() ? p.string() : (dir / p).string();
        SparseMatrix factor = read_matrix_market(resolved);
        if (factor.dim() != fe.dim) {
            throw std::runtime_error(resolved + ": factor dimension " +
                                     std::to_string(factor.dim()) +
                                     " does not match manifest dim " + std::to_string(fe.dim));
        }
        fe.slice.push_back(std::move(factor));
    }
    return fe;
}

} // namespace spusim
