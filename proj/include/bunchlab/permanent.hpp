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

#ifndef BUNCHLAB_PERMANENT_HPP
#define BUNCHLAB_PERMANENT_HPP

#include <cstddef>
#include <span>
#include <string_view>

#include "bunchlab/cmatrix.hpp"

namespace bunchlab {

/// A permanent stored as mantissa * 2^log2_scale, with |mantissa| in [1, 2)
/// (or exactly zero, in which case log2_scale is 0).
struct PermanentValue {
    cplx value{};
    int log2_scale = 0;

    static PermanentValue normalized(cplx v, int log2_scale = 0);

    /// value * 2^log2_scale; overflows to inf for magnitudes beyond double range.
    cplx to_complex() const;
    double real() const { return to_complex().real(); }
    bool is_zero() const { return value == cplx{}; }
};

/// |a - b| / max(|a|, |b|), evaluated without leaving the scaled representation.
double relative_difference(const PermanentValue& a, const PermanentValue& b);

enum class PermEngine { ryser, glynn, naive };

std::string_view engine_name(PermEngine engine);
PermEngine parse_engine(std::string_view name);

inline constexpr std::size_t kMaxPermanentDim = 24;
inline constexpr std::size_t kMaxNaiveDim = 9;
inline constexpr std::size_t kMaxFMatrixDim = 18;

// Every engine first rescales rows by exact powers of two so that the largest
// entry of each row lies in [0.5, 1); the removed exponents are returned in
// log2_scale. Matrices whose permanents are ~1e64 are therefore evaluated on
// O(1) entries.

/// Ryser inclusion-exclusion over column subsets in Gray-code order, O(2^n n).
PermanentValue perm_ryser(const CMatrix& a);

/// Glynn's formula over +-1 row vectors in Gray-code order, O(2^n n).
PermanentValue perm_glynn(const CMatrix& a);

/// Sum over all n! permutations (Heap's algorithm). n <= 9.
PermanentValue perm_naive(const CMatrix& a);

PermanentValue permanent(const CMatrix& a, PermEngine engine = PermEngine::ryser);

/// Permanent of the matrix with row i and column j deleted (0-based indices).
PermanentValue perm_minor(const CMatrix& a, std::size_t i, std::size_t j, PermEngine engine = PermEngine::ryser);

/// All n^2 minor permanents perm(A(i;j)) in one batched Ryser pass per deleted
/// column. Entries are plain doubles; magnitudes must fit the double range.
CMatrix minor_permanents(const CMatrix& a);

/// F_ij = A_ij * perm(A(i;j)). Rows and columns of F each sum to perm(A).
struct FMatrix {
    CMatrix base;
    CMatrix entries;
    cplx permanent{};
    /// max over rows and columns of |sum - perm(A)| / |perm(A)|
    double laplace_residual = 0.0;
};

/// Builds F^A for 2 <= n <= 18 and verifies every row and column sum against
/// perm(A) to 1e-9 relative; a failure raises PrecisionError.
FMatrix f_matrix(const CMatrix& a);

}  // namespace bunchlab

#endif  // BUNCHLAB_PERMANENT_HPP
