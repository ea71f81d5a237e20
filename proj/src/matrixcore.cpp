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

#include "bunchlab/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bunchlab/errors.hpp"

namespace bunchlab {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("CMatrix: entry count " + std::to_string(data_.size()) + " != " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::ones(std::size_t rows, std::size_t cols) {
    return {rows, cols, std::vector<cplx>(rows * cols, cplx(1.0, 0.0))};
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
    CMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<cplx> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("CMatrix::from_rows: ragged rows");
        data.insert(data.end(), row.begin(), row.end());
    }
    return {r, c, std::move(data)};
}

CMatrix CMatrix::from_real(std::size_t rows, std::size_t cols, std::span<const double> entries) {
    if (entries.size() != rows * cols) throw DimensionError("CMatrix::from_real: entry count mismatch");
    return {rows, cols, std::vector<cplx>(entries.begin(), entries.end())};
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

CMatrix CMatrix::real_part() const {
    CMatrix out = *this;
    for (auto& z : out.data_) z = z.real();
    return out;
}

CMatrix CMatrix::without(std::size_t i, std::size_t j) const {
    if (rows_ == 0 || cols_ == 0 || i >= rows_ || j >= cols_) throw IndexError("CMatrix::without: index out of range");
    CMatrix out(rows_ - 1, cols_ - 1);
    for (std::size_t r = 0, ro = 0; r < rows_; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, co = 0; c < cols_; ++c) {
            if (c == j) continue;
            out(ro, co++) = (*this)(r, c);
        }
        ++ro;
    }
    return out;
}

CMatrix CMatrix::principal(std::span<const std::size_t> indices) const {
    CMatrix out(indices.size(), indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = 0; b < indices.size(); ++b) {
            if (indices[a] >= rows_ || indices[b] >= cols_) throw IndexError("CMatrix::principal: index out of range");
            out(a, b) = (*this)(indices[a], indices[b]);
        }
    }
    return out;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw IndexError("CMatrix::block: out of range");
    CMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool CMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool CMatrix::is_real(double tol) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const cplx& z) { return std::abs(z.imag()) <= tol; });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("CMatrix +=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("CMatrix -=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("CMatrix *: inner dimension mismatch");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

// ---------------------------------------------------------------------------

CMatrix hadamard(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("hadamard: shapes " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    CMatrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] *= bd[k];
    return out;
}

namespace {

constexpr double kJacobiTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

void require_square(const CMatrix& a, const char* who) {
    if (!a.is_square() || a.rows() == 0) throw DimensionError(std::string(who) + ": matrix must be square and non-empty");
}

double off_diagonal_norm(const RealVector& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
    return std::sqrt(s);
}

// Real symmetric matrix of the Hermitian part. When the input is complex, the
// 2n x 2n embedding [[Re, -Im], [Im, Re]] is returned and `doubled` is set.
RealVector hermitian_embedding(const CMatrix& a, std::size_t& dim, bool& doubled) {
    const std::size_t n = a.rows();
    const CMatrix h = 0.5 * (a + a.adjoint());
    doubled = !h.is_real();
    dim = doubled ? 2 * n : n;
    RealVector out(dim * dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx z = h(i, j);
            out[i * dim + j] = z.real();
            if (doubled) {
                out[i * dim + (j + n)] = -z.imag();
                out[(i + n) * dim + j] = z.imag();
                out[(i + n) * dim + (j + n)] = z.real();
            }
        }
    }
    return out;
}

}  // namespace

RealEigenSystem jacobi_eigensystem(std::span<const double> sym, std::size_t n) {
    if (sym.size() != n * n || n == 0) throw DimensionError("jacobi_eigensystem: expected n*n entries");
    RealVector a(sym.begin(), sym.end());
    RealVector v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    double norm = 0.0;
    for (double x : a) norm += x * x;
    norm = std::sqrt(norm);

    RealEigenSystem out;
    out.n = n;
    int sweep = 0;
    for (;; ++sweep) {
        if (off_diagonal_norm(a, n) <= kJacobiTol * norm) break;
        if (sweep >= kJacobiMaxSweeps) {
            throw ConvergenceError("jacobi_eigensystem: no convergence after " + std::to_string(kJacobiMaxSweeps) +
                                   " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a[order[k] * n + order[k]];
        for (std::size_t r = 0; r < n; ++r) out.vectors[r * n + k] = v[r * n + order[k]];
    }
    out.sweeps = sweep;
    return out;
}

RealVector hermitian_eigenvalues(const CMatrix& a) {
    require_square(a, "hermitian_eigenvalues");
    std::size_t dim = 0;
    bool doubled = false;
    const RealVector sym = hermitian_embedding(a, dim, doubled);
    const RealEigenSystem es = jacobi_eigensystem(sym, dim);
    if (!doubled) return es.values;
    // Every eigenvalue of the embedding appears twice.
    RealVector out(a.rows());
    for (std::size_t k = 0; k < a.rows(); ++k) out[k] = 0.5 * (es.values[2 * k] + es.values[2 * k + 1]);
    return out;
}

HermitianCheckReport check_psd_hermitian(const CMatrix& a, double hermitian_tol) {
    require_square(a, "check_psd_hermitian");
    HermitianCheckReport rep;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(a(i, j) - std::conj(a(j, i))));
    rep.is_hermitian = rep.max_asymmetry <= hermitian_tol;
    const RealVector ev = hermitian_eigenvalues(a);
    rep.min_eigenvalue = ev.front();
    rep.max_eigenvalue = ev.back();
    const double scale = std::max(std::abs(ev.front()), std::abs(ev.back()));
    rep.is_psd = rep.is_hermitian && rep.min_eigenvalue >= -kPsdRelTol * scale;
    return rep;
}

SymEigMax sym_eig_max(const CMatrix& a) {
    require_square(a, "sym_eig_max");
    const std::size_t n = a.rows();
    RealVector sym(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sym[i * n + j] = 0.5 * (a(i, j).real() + a(j, i).real());
    const RealEigenSystem es = jacobi_eigensystem(sym, n);

    SymEigMax out;
    out.value = es.values.back();
    out.vector.resize(n);
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        out.vector[r] = es.vectors[r * n + (n - 1)];
        norm += out.vector[r] * out.vector[r];
    }
    norm = std::sqrt(norm);
    for (double& x : out.vector) x /= norm;
    for (double x : out.vector) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0)
                for (double& y : out.vector) y = -y;
            break;
        }
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& a) {
    require_square(a, "psd_sqrt");
    const std::size_t n = a.rows();
    const double scale = std::max(1.0, a.max_abs());
    const HermitianCheckReport chk = check_psd_hermitian(a, kHermitianTol * scale);
    if (!chk.is_hermitian) throw DomainError("psd_sqrt: matrix is not Hermitian");

    std::size_t dim = 0;
    bool doubled = false;
    const RealVector sym = hermitian_embedding(a, dim, doubled);
    const RealEigenSystem es = jacobi_eigensystem(sym, dim);
    const double lmax = std::max(std::abs(es.values.front()), std::abs(es.values.back()));
    RealVector roots(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        const double lam = es.values[k];
        if (lam < -kPsdRelTol * lmax) {
            throw DomainError("psd_sqrt: matrix is not positive semidefinite (eigenvalue " + std::to_string(lam) + ")");
        }
        // Both copies of an embedded eigenvalue must get the same root, so
        // roundoff-sized eigenvalues of either sign are zeroed.
        roots[k] = lam <= kPsdRelTol * lmax ? 0.0 : std::sqrt(lam);
    }
    // R = Q diag(roots) Q^T, then read the complex root back out of the embedding.
    RealVector r(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < dim; ++k) s += es.vectors[i * dim + k] * roots[k] * es.vectors[j * dim + k];
            r[i * dim + j] = s;
        }
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = doubled ? cplx(r[i * dim + j], r[(i + n) * dim + j]) : cplx(r[i * dim + j], 0.0);
    return out;
}

CMatrix gram_from_vectors(std::span<const ComplexVector> states) {
    if (states.empty()) throw DimensionError("gram_from_vectors: no states");
    const std::size_t dim = states.front().size();
    for (const auto& s : states) {
        if (s.size() != dim) throw DimensionError("gram_from_vectors: vectors differ in dimension");
        double nrm = 0.0;
        for (const auto& z : s) nrm += std::norm(z);
        if (std::abs(std::sqrt(nrm) - 1.0) > 1e-10) throw DomainError("gram_from_vectors: vector is not unit norm");
    }
    const std::size_t n = states.size();
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < dim; ++k) s += std::conj(states[i][k]) * states[j][k];
            g(i, j) = s;
        }
    return g;
}

double spectral_norm(const CMatrix& a) {
    if (a.empty()) throw DimensionError("spectral_norm: empty matrix");
    const CMatrix g = a.rows() <= a.cols() ? a * a.adjoint() : a.adjoint() * a;
    const RealVector ev = hermitian_eigenvalues(g);
    return std::sqrt(std::max(ev.back(), 0.0));
}

}  // namespace bunchlab
