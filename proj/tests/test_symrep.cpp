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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "spusim/dilation.hpp"
#include "spusim/symrep.hpp"
#include "support/oracles.hpp"

using namespace spusim;

namespace {

void collect_partitions(std::size_t remaining, std::size_t max_part,
                        std::vector<std::size_t>& current,
                        std::vector<std::vector<std::size_t>>& out) {
    if (remaining == 0) {
        out.push_back(current);
        return;
    }
    for (std::size_t part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        collect_partitions(remaining - part, part, current, out);
        current.pop_back();
    }
}

std::vector<std::vector<std::size_t>> all_partitions(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    collect_partitions(n, n, current, out);
    return out;
}

} // namespace

TEST_CASE("two-row shape on three letters reproduces the frozen matrices") {
    const std::vector<std::size_t> shape = {2, 1};
    const std::vector<Tableau> basis = tableau_basis(shape);
    REQUIRE(basis.size() == 2);
    // First basis tableau keeps 1,2 in the top row.
    CHECK(basis[0].rows[0] == std::vector<int>{1, 2});
    CHECK(basis[0].rows[1] == std::vector<int>{3});
    CHECK(basis[1].rows[0] == std::vector<int>{1, 3});
    CHECK(basis[1].rows[1] == std::vector<int>{2});

    const SparseMatrix s1 = symrep_generator(shape, 1);
    CHECK(std::abs(s1.at(0, 0) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(s1.at(1, 1) - cplx(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(s1.at(0, 1)) < 1e-15);

    const double root3over2 = std::sqrt(3.0) / 2.0;
    const SparseMatrix s2 = symrep_generator(shape, 2);
    CHECK(std::abs(s2.at(0, 0) - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s2.at(1, 1) - cplx(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s2.at(0, 1) - cplx(root3over2, 0.0)) < 1e-15);
    CHECK(std::abs(s2.at(1, 0) - cplx(root3over2, 0.0)) < 1e-15);
}

TEST_CASE("one-row and one-column shapes give the scalar characters") {
    for (std::size_t j = 1; j <= 3; ++j) {
        const SparseMatrix sym = symrep_generator({4}, j);
        REQUIRE(sym.dim() == 1);
        CHECK(std::abs(sym.at(0, 0) - cplx(1.0, 0.0)) < 1e-15);
        const SparseMatrix anti = symrep_generator({1, 1, 1, 1}, j);
        REQUIRE(anti.dim() == 1);
        CHECK(std::abs(anti.at(0, 0) - cplx(-1.0, 0.0)) < 1e-15);
    }
}

TEST_CASE("square shape on four letters mixes only the middle letters") {
    const std::vector<std::size_t> shape = {2, 2};
    REQUIRE(tableau_basis(shape).size() == 2);
    const SparseMatrix s1 = symrep_generator(shape, 1);
    const SparseMatrix s3 = symrep_generator(shape, 3);
    for (std::size_t d = 0; d < 2; ++d) {
        CHECK(std::abs(s1.at(d, d) - cplx(d == 0 ? 1.0 : -1.0, 0.0)) < 1e-15);
        CHECK(std::abs(s3.at(d, d) - cplx(d == 0 ? 1.0 : -1.0, 0.0)) < 1e-15);
    }
    const SparseMatrix s2 = symrep_generator(shape, 2);
    CHECK(std::abs(s2.at(0, 0) - cplx(-0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s2.at(0, 1) - cplx(std::sqrt(3.0) / 2.0, 0.0)) < 1e-15);
}

TEST_CASE("basis size agrees with the hook-length count for all shapes up to six") {
    for (std::size_t n = 1; n <= 6; ++n)
        for (const auto& shape : all_partitions(n)) {
            CAPTURE(n);
            CHECK(tableau_basis(shape).size() == testing::hook_length_dim(shape));
        }
}

TEST_CASE("generator relations hold for all shapes up to six") {
    for (std::size_t n = 2; n <= 6; ++n)
        for (const auto& shape : all_partitions(n)) {
            const SymrepReport report = symrep_check(shape);
            CAPTURE(n);
            CAPTURE(report.detail);
            CHECK(report.passed);
            CHECK(report.max_residual <= 1e-10);
        }
}

TEST_CASE("generators keep at most two nonzeros per row") {
    for (const auto& shape :
         std::vector<std::vector<std::size_t>>{{3, 2}, {2, 2, 1}, {4, 2}, {3, 3}}) {
        std::size_t n = 0;
        for (std::size_t part : shape) n += part;
        for (std::size_t j = 1; j + 1 <= n; ++j)
            CHECK(symrep_generator(shape, j).max_row_nnz() <= 2);
    }
}

TEST_CASE("generators feed the Hermitian embedding directly") {
    const Dilation d = dilate(symrep_generator({3, 2}, 2));
    CHECK(d.h.dim() == 10);
    CHECK(involution_defect(d.h) <= 1e-12);
}

TEST_CASE("invalid shapes and generator indices are rejected") {
    CHECK_THROWS_AS(symrep_generator({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(symrep_generator({2, 3}, 1), std::invalid_argument);
    CHECK_THROWS_AS(symrep_generator({3, 0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(symrep_generator({2, 1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(symrep_generator({2, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(symrep_generator({1}, 1), std::invalid_argument);
}
