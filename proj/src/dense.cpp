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

#include "spusim/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "spusim/statevec.hpp"

namespace spusim {

namespace {

// Fixed start seed keeps every norm certificate byte-reproducible.
constexpr std::uint64_t kPowerIterSeed = 0x243F6A8885A308D3ull;

// Frobenius norms at or below this are returned directly: the Frobenius
// norm upper-bounds the spectral norm, and power iteration on a matrix
// this close to zero stalls on the relative stopping rule.
constexpr double kFrobeniusShortcut = 1e-13;

std::vector<cplx> random_unit_vector(std::size_t dim) {
    std::mt19937_64 rng(kPowerIterSeed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(dim);
    for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
    double n = norm(v);
    for (auto& x : v) x /= n;
    return v;
}

// Power iteration on m^dagger m starting from *v; returns the singular
// value estimate and leaves the final iterate in *v for warm restarts.
double power_iteration(const DenseMatrix& m, std::vector<cplx>* v, double rel_tol,
                       bool* converged) {
    const std::size_t dim = m.dim();
    const DenseMatrix mh = m.adjoint();
    double sigma = 0.0;
    *converged = false;
    for (std::size_t iter = 0; iter < kPowerIterCap; ++iter) {
        std::vector<cplx> w = matvec(m, *v);
        const double sigma_next = norm(w);
        if (sigma_next == 0.0) {
            *converged = true;
            return 0.0;
        }
        std::vector<cplx> u = matvec(mh, w);
        const double un = norm(u);
        if (un == 0.0) {
            *converged = true;
            return sigma_next;
        }
        for (std::size_t i = 0; i < dim; ++i) (*v)[i] = u[i] / un;
        if (iter >= 2 && std::abs(sigma_next - sigma) <= rel_tol * sigma_next) {
            *converged = true;
            return sigma_next;
        }
        sigma = sigma_next;
    }
    return sigma;
}

double spectral_norm_with_start(const DenseMatrix& m, std::vector<cplx>* warm, double rel_tol,
                                bool* converged) {
    *converged = true;
    if (m.dim() == 0) return 0.0;
    const double frob = m.frobenius_norm();
    if (frob <= kFrobeniusShortcut) return frob;
    return power_iteration(m, warm, rel_tol, converged);
}

} // namespace

DenseMatrix DenseMatrix::identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = cplx(1.0, 0.0);
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out.at(j, i) = std::conj(at(i, j));
    }
    return out;
}

double DenseMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const cplx& x : data_) sum += std::norm(x);
    return std::sqrt(sum);
}

DenseMatrix to_dense(const SparseMatrix& m) {
    if (m.dim() > kDenseCap) {
        throw std::invalid_argument("dimension " + std::to_string(m.dim()) +
                                    " exceeds dense cap " + std::to_string(kDenseCap));
    }
    DenseMatrix out(m.dim());
    for (const Entry& e : m.entries()) out.at(e.row, e.col) = e.amp;
    return out;
}

SparseMatrix dense_to_sparse(const DenseMatrix& d) {
    SparseBuilder builder(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i) {
        for (std::size_t j = 0; j < d.dim(); ++j) {
            const cplx x = d.at(i, j);
            if (std::abs(x) >= kDropTol) builder.add(i, j, x);
        }
    }
    return builder.build();
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in dense product: " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    const std::size_t n = a.dim();
    DenseMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a.at(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    }
    return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in dense difference: " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    DenseMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    }
    return c;
}

std::vector<cplx> matvec(const DenseMatrix& m, const std::vector<cplx>& v) {
    if (v.size() != m.dim()) {
        throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                    " does not match dimension " + std::to_string(m.dim()));
    }
    std::vector<cplx> out(m.dim(), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < m.dim(); ++i) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < m.dim(); ++j) acc += m.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double spectral_norm(const DenseMatrix& m) {
    if (m.dim() == 0) return 0.0;
    std::vector<cplx> v = random_unit_vector(m.dim());
    bool converged = false;
    const double sigma = spectral_norm_with_start(m, &v, kSpectralNormTol, &converged);
    if (converged) return sigma;
    // A near-degenerate top singular pair stalls power iteration; the
    // Jacobi eigensolver on m^dagger m has no gap dependence.
    const Eigensystem es = eigh(matmul(m.adjoint(), m));
    double top = 0.0;
    for (double lambda : es.eigenvalues) top = std::max(top, lambda);
    return std::sqrt(top);
}

double distance(const DenseMatrix& a, const DenseMatrix& b) {
    return spectral_norm(subtract(a, b));
}

double phase_invariant_distance(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch in phase-invariant distance: " +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    if (a.dim() == 0) return 0.0;

    auto shifted = [&](double phi) {
        const cplx phase = std::exp(cplx(0.0, phi));
        DenseMatrix d(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) {
            for (std::size_t j = 0; j < a.dim(); ++j) d.at(i, j) = a.at(i, j) - phase * b.at(i, j);
        }
        return d;
    };

    // Coarse scan with warm-started, loosely converged iterations; the
    // objective moves slowly in phi so the previous iterate is a good start.
    std::vector<cplx> warm = random_unit_vector(a.dim());
    bool converged = false;
    const double step = 2.0 * std::numbers::pi / kPhaseGridPoints;
    double best_phi = 0.0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < kPhaseGridPoints; ++k) {
        const double phi = static_cast<double>(k) * step;
        const double val = spectral_norm_with_start(shifted(phi), &warm, 1e-6, &converged);
        if (val < best_val) {
            best_val = val;
            best_phi = phi;
        }
    }

    // Golden-section refinement inside the bracketing grid cells.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_phi - step;
    double hi = best_phi + step;
    auto eval = [&](double phi) {
        return spectral_norm_with_start(shifted(phi), &warm, 1e-8, &converged);
    };
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    for (int iter = 0; iter < 60 && (hi - lo) > 1e-10; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
        }
    }
    const double phi_star = (lo + hi) / 2.0;
    const double refined = spectral_norm(shifted(phi_star));
    return std::min(best_val, refined);
}

Eigensystem eigh(const DenseMatrix& h) {
    const std::size_t n = h.dim();
    // Symmetrized working copy; Jacobi preserves Hermiticity exactly.
    DenseMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
        }
    }
    DenseMatrix v = DenseMatrix::identity(n);

    auto off_norm = [&]() {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) sum += std::norm(a.at(i, j));
            }
        }
        return std::sqrt(sum);
    };

    const double frob = a.frobenius_norm();
    const double target = std::max(1e-300, 1e-14 * std::max(1.0, frob));
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    for (; sweep < kMaxSweeps && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double beta = std::abs(apq);
                if (beta <= 1e-300) continue;
                const cplx eph = apq / beta;
                const double alpha = a.at(p, p).real();
                const double gamma = a.at(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * beta);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Column pass: a <- a J, with J the (p, q)-plane rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * std::conj(eph) * akq;
                    a.at(k, q) = s * eph * akp + c * akq;
                }
                // Row pass: a <- J^dagger a.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a.at(p, k);
                    const cplx aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * eph * aqk;
                    a.at(q, k) = s * std::conj(eph) * apk + c * aqk;
                }
                a.at(p, q) = cplx(0.0, 0.0);
                a.at(q, p) = cplx(0.0, 0.0);
                a.at(p, p) = cplx(a.at(p, p).real(), 0.0);
                a.at(q, q) = cplx(a.at(q, q).real(), 0.0);
                // Accumulate eigenvectors: v <- v J.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v.at(k, p);
                    const cplx vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * std::conj(eph) * vkq;
                    v.at(k, q) = s * eph * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == kMaxSweeps && off_norm() > target) {
        throw std::runtime_error("Jacobi eigensolver did not converge in " +
                                 std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a.at(i, i).real() < a.at(j, j).real();
    });

    Eigensystem sys;
    sys.eigenvalues.resize(n);
    sys.vectors = DenseMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        sys.eigenvalues[j] = a.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) sys.vectors.at(i, j) = v.at(i, order[j]);
    }
    return sys;
}

DenseMatrix expm_hermitian(const DenseMatrix& h, double theta) {
    const Eigensystem sys = eigh(h);
    const std::size_t n = h.dim();
    DenseMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx scaled = sys.vectors.at(i, k) * std::exp(cplx(0.0, -theta * sys.eigenvalues[k]));
            for (std::size_t j = 0; j < n; ++j) {
                out.at(i, j) += scaled * std::conj(sys.vectors.at(j, k));
            }
        }
    }
    return out;
}

} // namespace spusim
