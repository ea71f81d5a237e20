// Copyright 2026 The bunchlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations for the unit tests. Nothing here calls
// into the library's numerical routines.

#ifndef BUNCHLAB_TESTS_ORACLES_HPP
#define BUNCHLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "bunchlab/cmatrix.hpp"

namespace oracle {

using bunchlab::CMatrix;
using bunchlab::cplx;

// Laplace expansion along the first remaining row.
inline cplx perm_laplace(const CMatrix& a, std::size_t row, std::vector<std::size_t>& cols) {
    if (cols.empty()) return 1.0;
    cplx sum = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t c = cols[k];
        if (a(row, c) == cplx{}) continue;
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
        sum += a(row, c) * perm_laplace(a, row + 1, cols);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    }
    return sum;
}

inline cplx perm(const CMatrix& a) {
    std::vector<std::size_t> cols(a.cols());
    std::iota(cols.begin(), cols.end(), 0);
    return perm_laplace(a, 0, cols);
}

inline double rel(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

// Number of eigenvalues of Hermitian a below x, from the inertia of the LDL^H
// factorization of a - x I (Sylvester's law).
inline std::size_t count_below(const CMatrix& a, double x) {
    const std::size_t n = a.rows();
    std::vector<cplx> m(a.data().begin(), a.data().end());
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] -= x;
    std::size_t negatives = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double d = m[k * n + k].real();
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++negatives;
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx l = m[i * n + k] / d;
            for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= l * std::conj(m[j * n + k]);
        }
    }
    return negatives;
}

// k-th smallest eigenvalue (0-based) of Hermitian a by bisection.
inline double bisect_eigenvalue(const CMatrix& a, std::size_t k) {
    double bound = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) r += std::abs(a(i, j));
        bound = std::max(bound, r);
    }
    double lo = -bound - 1.0;
    double hi = bound + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, bound); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(a, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline CMatrix gaussian(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix a(r, c);
    for (auto& z : a.data()) z = {g(rng), g(rng)};
    return a;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    return c;
}

inline CMatrix dagger(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

inline double max_diff(const CMatrix& a, const CMatrix& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

// Random Gram matrix of n unit vectors in C^dim.
inline CMatrix gram(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
    CMatrix v = gaussian(n, dim, rng);
    for (std::size_t i = 0; i < n; ++i) {
        double nrm = 0.0;
        for (std::size_t k = 0; k < dim; ++k) nrm += std::norm(v(i, k));
        for (std::size_t k = 0; k < dim; ++k) v(i, k) /= std::sqrt(nrm);
    }
    CMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < dim; ++k) s(i, j) += std::conj(v(i, k)) * v(j, k);
    return s;
}

// Unitary from modified Gram-Schmidt on the columns of a Gaussian matrix.
inline CMatrix unitary(std::size_t m, std::mt19937_64& rng) {
    CMatrix q = gaussian(m, m, rng);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += std::conj(q(i, p)) * q(i, j);
            for (std::size_t i = 0; i < m; ++i) q(i, j) -= dot * q(i, p);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < m; ++i) nrm += std::norm(q(i, j));
        for (std::size_t i = 0; i < m; ++i) q(i, j) /= std::sqrt(nrm);
    }
    return q;
}

// H_ij = sum_{k in kappa} conj(U_ki) U_kj, written out directly.
inline CMatrix h_direct(const CMatrix& u, std::size_t n, const std::vector<std::size_t>& kappa) {
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k : kappa) h(i, j) += std::conj(u(k, i)) * u(k, j);
    return h;
}

inline CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = a.data()[k] * b.data()[k];
    return c;
}

}  // namespace oracle

#endif  // BUNCHLAB_TESTS_ORACLES_HPP
