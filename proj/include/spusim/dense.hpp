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

#include <vector>

#include "spusim/sparse.hpp"
#include "spusim/types.hpp"

namespace spusim {

/**
 * @brief Square complex dense matrix, row major.
 *
 * Working representation for verification paths (norm certificates,
 * reference products, eigensolves). Conversion from sparse refuses
 * dimensions above the dense cap.
 */
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static DenseMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cplx& at(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const cplx& at(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    const std::vector<cplx>& data() const { return data_; }

    DenseMatrix adjoint() const;
    double frobenius_norm() const;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Materializes m; throws std::invalid_argument above the dense cap.
DenseMatrix to_dense(const SparseMatrix& m);

/// Sparsifies d, dropping entries below the drop tolerance.
SparseMatrix dense_to_sparse(const DenseMatrix& d);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
std::vector<cplx> matvec(const DenseMatrix& m, const std::vector<cplx>& v);

/**
 * @brief Largest singular value via power iteration on A^dagger A.
 *
 * Deterministic start vector. Converges to relative tolerance 1e-10; when
 * the Frobenius norm is already below 1e-13 it is returned directly as a
 * certified upper bound. Throws std::runtime_error if the iteration cap is
 * reached without convergence.
 */
double spectral_norm(const DenseMatrix& m);

/// Spectral norm of (a - b).
double distance(const DenseMatrix& a, const DenseMatrix& b);

/// min over phases phi of ||a - e^{i phi} b||_2, by grid scan plus
/// golden-section refinement. Collapses global-phase disagreement.
double phase_invariant_distance(const DenseMatrix& a, const DenseMatrix& b);

/**
 * @brief Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.
 *
 * Returns ascending eigenvalues and the unitary V with h = V diag(w) V^dagger.
 * Input Hermiticity is the caller's responsibility; only the lower triangle
 * is trusted after symmetrization.
 */
struct Eigensystem {
    std::vector<double> eigenvalues;
    DenseMatrix vectors;
};

Eigensystem eigh(const DenseMatrix& h);

/// e^{-i theta h} for Hermitian h, through the eigensystem of h.
DenseMatrix expm_hermitian(const DenseMatrix& h, double theta);

} // namespace spusim
