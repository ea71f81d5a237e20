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

#ifndef BUNCHLAB_CMATRIX_HPP
#define BUNCHLAB_CMATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bunchlab {

using cplx = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<cplx>;

/// Dense row-major complex matrix. Carries every matrix in the library:
/// unitaries, H and S matrices, their Hadamard products and F-matrices.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static CMatrix identity(std::size_t n);
    static CMatrix ones(std::size_t rows, std::size_t cols);
    static CMatrix diagonal(std::span<const cplx> diag);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
    static CMatrix from_real(std::size_t rows, std::size_t cols, std::span<const double> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }
    std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;
    /// Entrywise real part, as a complex matrix with zero imaginary part.
    CMatrix real_part() const;

    /// Matrix with row i and column j removed (both 0-based).
    CMatrix without(std::size_t i, std::size_t j) const;
    /// Principal submatrix on the given (0-based) indices, in the given order.
    CMatrix principal(std::span<const std::size_t> indices) const;
    /// Rows [r0, r0+nr) and columns [c0, c0+nc).
    CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    double max_abs() const;
    double frobenius_norm() const;
    bool all_finite() const;
    bool is_real(double tol = 0.0) const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx s);

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

// ---------------------------------------------------------------------------
// Linear algebra primitives
// ---------------------------------------------------------------------------

inline constexpr double kHermitianTol = 1e-10;
/// Eigenvalues >= -kPsdRelTol * lambda_max count as zero.
inline constexpr double kPsdRelTol = 1e-12;

struct HermitianCheckReport {
    bool is_hermitian = false;
    double max_asymmetry = 0.0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    bool is_psd = false;
};

/// Elementwise product. Throws DimensionError on shape mismatch.
CMatrix hadamard(const CMatrix& a, const CMatrix& b);

/// Reports max|a_ij - conj(a_ji)| and the spectrum extremes of (a + a^dagger)/2.
HermitianCheckReport check_psd_hermitian(const CMatrix& a, double hermitian_tol = kHermitianTol);

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
struct RealEigenSystem {
    RealVector values;   ///< ascending
    RealVector vectors;  ///< column k (stride n) is the eigenvector of values[k]
    std::size_t n = 0;
    int sweeps = 0;
};

/// `sym` is an n*n row-major symmetric matrix. Throws ConvergenceError after
/// 100 sweeps without reaching off-diagonal norm <= 1e-13 * ||sym||_F.
RealEigenSystem jacobi_eigensystem(std::span<const double> sym, std::size_t n);

/// Ascending eigenvalues of the Hermitian part of a square matrix.
RealVector hermitian_eigenvalues(const CMatrix& a);

struct SymEigMax {
    double value = 0.0;
    RealVector vector;
};

/// Largest eigenpair of Sym(Re a) = (Re a + Re a^T)/2. The eigenvector has unit
/// norm and its first component with magnitude > 1e-12 is positive.
SymEigMax sym_eig_max(const CMatrix& a);

/// Hermitian PSD square root. Eigenvalues within 1e-12*||a|| of zero are
/// treated as zero; anything more negative raises DomainError.
CMatrix psd_sqrt(const CMatrix& a);

/// S_ij = <phi_i|phi_j>. Every vector must have unit norm within 1e-10.
CMatrix gram_from_vectors(std::span<const ComplexVector> states);

/// Largest singular value.
double spectral_norm(const CMatrix& a);

}  // namespace bunchlab

#endif  // BUNCHLAB_CMATRIX_HPP
