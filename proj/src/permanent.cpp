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

#include "bunchlab/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bunchlab/errors.hpp"
#include "bunchlab/parallel.hpp"

namespace bunchlab {

namespace {

// Compensated complex accumulator (Kahan on each component).
class KahanSum {
public:
    void add(cplx x) {
        add_component(x.real(), sum_re_, comp_re_);
        add_component(x.imag(), sum_im_, comp_im_);
    }
    cplx value() const { return {sum_re_, sum_im_}; }

private:
    static void add_component(double x, double& sum, double& comp) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double sum_re_ = 0.0, comp_re_ = 0.0;
    double sum_im_ = 0.0, comp_im_ = 0.0;
};

void check_engine_input(const CMatrix& a, std::size_t limit, const char* who) {
    if (!a.is_square() || a.rows() == 0) throw DimensionError(std::string(who) + ": matrix must be square and non-empty");
    if (a.rows() > limit) {
        throw SizeError(std::string(who) + ": dimension " + std::to_string(a.rows()) + " exceeds guard " +
                        std::to_string(limit));
    }
    if (!a.all_finite()) throw DomainError(std::string(who) + ": non-finite entry");
}

// Scales each row by 2^-e_r so its largest entry lies in [0.5, 1). Returns the
// exponents, or an empty vector if some row is identically zero.
std::vector<int> balance_rows(CMatrix& a) {
    std::vector<int> exps(a.rows(), 0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double m = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) m = std::max({m, std::abs(a(r, c).real()), std::abs(a(r, c).imag())});
        if (m == 0.0) return {};
        int e = 0;
        std::frexp(m, &e);
        exps[r] = e;
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = {std::ldexp(a(r, c).real(), -e), std::ldexp(a(r, c).imag(), -e)};
    }
    return exps;
}

int exponent_sum(const std::vector<int>& exps) {
    int s = 0;
    for (int e : exps) s += e;
    return s;
}

cplx ryser_raw(const CMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<cplx> row_sums(n);
    KahanSum acc;
    std::uint64_t gray_prev = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < total; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const int col = std::countr_zero(gray ^ gray_prev);
        const bool added = (gray >> col) & 1U;
        for (std::size_t r = 0; r < n; ++r) {
            if (added)
                row_sums[r] += a(r, col);
            else
                row_sums[r] -= a(r, col);
        }
        gray_prev = gray;
        cplx prod = row_sums[0];
        for (std::size_t r = 1; r < n; ++r) prod *= row_sums[r];
        // |S| is odd exactly when k is odd.
        acc.add((k & 1U) ? -prod : prod);
    }
    return (n & 1U) ? -acc.value() : acc.value();
}

cplx glynn_raw(const CMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<cplx> col_sums(n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) col_sums[c] += a(r, c);
    std::vector<int> delta(n, 1);
    KahanSum acc;
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    int sign = 1;
    for (std::uint64_t k = 0; k < total; ++k) {
        if (k > 0) {
            const std::size_t row = static_cast<std::size_t>(std::countr_zero(k)) + 1;
            delta[row] = -delta[row];
            sign = -sign;
            const double f = 2.0 * delta[row];
            for (std::size_t c = 0; c < n; ++c) col_sums[c] += f * a(row, c);
        }
        cplx prod = col_sums[0];
        for (std::size_t c = 1; c < n; ++c) prod *= col_sums[c];
        acc.add(sign > 0 ? prod : -prod);
    }
    const cplx v = acc.value();
    return {std::ldexp(v.real(), 1 - static_cast<int>(n)), std::ldexp(v.imag(), 1 - static_cast<int>(n))};
}

cplx naive_raw(const CMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::size_t> c(n, 0);
    KahanSum acc;
    auto term = [&] {
        cplx p = a(0, perm[0]);
        for (std::size_t i = 1; i < n; ++i) p *= a(i, perm[i]);
        acc.add(p);
    };
    term();
    std::size_t i = 1;
    while (i < n) {
        if (c[i] < i) {
            if (i % 2 == 0)
                std::swap(perm[0], perm[i]);
            else
                std::swap(perm[c[i]], perm[i]);
            term();
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    return acc.value();
}

template <typename Raw>
PermanentValue run_engine(const CMatrix& a, std::size_t limit, const char* who, Raw raw) {
    check_engine_input(a, limit, who);
    CMatrix b = a;
    const std::vector<int> exps = balance_rows(b);
    if (exps.empty()) return {};
    return PermanentValue::normalized(raw(b), exponent_sum(exps));
}

}  // namespace

PermanentValue PermanentValue::normalized(cplx v, int log2_scale) {
    const double mag = std::abs(v);
    if (mag == 0.0 || !std::isfinite(mag)) return {mag == 0.0 ? cplx{} : v, mag == 0.0 ? 0 : log2_scale};
    int e = 0;
    std::frexp(mag, &e);  // mag = f * 2^e with f in [0.5, 1)
    const int shift = e - 1;
    return {{std::ldexp(v.real(), -shift), std::ldexp(v.imag(), -shift)}, log2_scale + shift};
}

cplx PermanentValue::to_complex() const {
    return {std::ldexp(value.real(), log2_scale), std::ldexp(value.imag(), log2_scale)};
}

double relative_difference(const PermanentValue& a, const PermanentValue& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    const int e = std::max(a.is_zero() ? b.log2_scale : a.log2_scale, b.is_zero() ? a.log2_scale : b.log2_scale);
    auto rescale = [e](const PermanentValue& p) {
        return cplx{std::ldexp(p.value.real(), p.log2_scale - e), std::ldexp(p.value.imag(), p.log2_scale - e)};
    };
    const cplx x = rescale(a);
    const cplx y = rescale(b);
    return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

std::string_view engine_name(PermEngine engine) {
    switch (engine) {
        case PermEngine::ryser: return "ryser";
        case PermEngine::glynn: return "glynn";
        case PermEngine::naive: return "naive";
    }
    return "unknown";
}

PermEngine parse_engine(std::string_view name) {
    if (name == "ryser") return PermEngine::ryser;
    if (name == "glynn") return PermEngine::glynn;
    if (name == "naive") return PermEngine::naive;
    throw ParseError("unknown permanent engine '" + std::string(name) + "'");
}

PermanentValue perm_ryser(const CMatrix& a) { return run_engine(a, kMaxPermanentDim, "perm_ryser", ryser_raw); }

PermanentValue perm_glynn(const CMatrix& a) { return run_engine(a, kMaxPermanentDim, "perm_glynn", glynn_raw); }

PermanentValue perm_naive(const CMatrix& a) { return run_engine(a, kMaxNaiveDim, "perm_naive", naive_raw); }

PermanentValue permanent(const CMatrix& a, PermEngine engine) {
    switch (engine) {
        case PermEngine::ryser: return perm_ryser(a);
        case PermEngine::glynn: return perm_glynn(a);
        case PermEngine::naive: return perm_naive(a);
    }
    throw DomainError("permanent: unknown engine");
}

PermanentValue perm_minor(const CMatrix& a, std::size_t i, std::size_t j, PermEngine engine) {
    if (!a.is_square() || a.rows() < 2) throw DimensionError("perm_minor: matrix must be square with n >= 2");
    if (i >= a.rows() || j >= a.cols()) {
        throw IndexError("perm_minor: index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range for n = " +
                         std::to_string(a.rows()));
    }
    return permanent(a.without(i, j), engine);
}

CMatrix minor_permanents(const CMatrix& a) {
    if (!a.is_square() || a.rows() < 2) throw DimensionError("minor_permanents: matrix must be square with n >= 2");
    check_engine_input(a, kMaxPermanentDim + 1, "minor_permanents");
    const std::size_t n = a.rows();
    CMatrix b = a;
    const std::vector<int> exps = balance_rows(b);
    CMatrix out(n, n);
    if (exps.empty()) {
        // Some row is zero; minors that keep it vanish, so evaluate each directly.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) = perm_ryser(a.without(i, j)).to_complex();
        return out;
    }
    const int total_exp = exponent_sum(exps);
    const std::size_t m = n - 1;  // columns per minor

    parallel_for(n, [&](std::size_t del_col) {
        std::vector<std::size_t> cols;
        cols.reserve(m);
        for (std::size_t c = 0; c < n; ++c)
            if (c != del_col) cols.push_back(c);
        std::vector<cplx> row_sums(n), prefix(n + 1), suffix(n + 1);
        std::vector<KahanSum> acc(n);
        std::uint64_t gray_prev = 0;
        const std::uint64_t total = std::uint64_t{1} << m;
        for (std::uint64_t k = 1; k < total; ++k) {
            const std::uint64_t gray = k ^ (k >> 1);
            const int bit = std::countr_zero(gray ^ gray_prev);
            const std::size_t col = cols[static_cast<std::size_t>(bit)];
            const bool added = (gray >> bit) & 1U;
            for (std::size_t r = 0; r < n; ++r) {
                if (added)
                    row_sums[r] += b(r, col);
                else
                    row_sums[r] -= b(r, col);
            }
            gray_prev = gray;
            prefix[0] = 1.0;
            for (std::size_t r = 0; r < n; ++r) prefix[r + 1] = prefix[r] * row_sums[r];
            suffix[n] = 1.0;
            for (std::size_t r = n; r-- > 0;) suffix[r] = suffix[r + 1] * row_sums[r];
            const bool odd = k & 1U;
            for (std::size_t i = 0; i < n; ++i) {
                const cplx p = prefix[i] * suffix[i + 1];
                acc[i].add(odd ? -p : p);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            cplx v = acc[i].value();
            if (m & 1U) v = -v;
            const int e = total_exp - exps[i];
            out(i, del_col) = {std::ldexp(v.real(), e), std::ldexp(v.imag(), e)};
        }
    });
    return out;
}

FMatrix f_matrix(const CMatrix& a) {
    if (!a.is_square() || a.rows() < 2) throw DimensionError("f_matrix: matrix must be square with n >= 2");
    if (a.rows() > kMaxFMatrixDim) {
        throw SizeError("f_matrix: dimension " + std::to_string(a.rows()) + " exceeds guard " +
                        std::to_string(kMaxFMatrixDim));
    }
    const std::size_t n = a.rows();
    FMatrix out;
    out.base = a;
    out.entries = hadamard(a, minor_permanents(a));
    out.permanent = perm_ryser(a).to_complex();
    if (!out.entries.all_finite() || !std::isfinite(std::abs(out.permanent))) {
        throw DomainError("f_matrix: magnitudes exceed double range");
    }

    const double denom = std::abs(out.permanent);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum row, col;
        for (std::size_t j = 0; j < n; ++j) {
            row.add(out.entries(i, j));
            col.add(out.entries(j, i));
        }
        worst = std::max({worst, std::abs(row.value() - out.permanent), std::abs(col.value() - out.permanent)});
    }
    out.laplace_residual = denom > 0.0 ? worst / denom : worst;
    if (worst > 1e-9 * denom) {
        throw PrecisionError("f_matrix: Laplace row/column sums deviate from perm(A) by " +
                             std::to_string(out.laplace_residual) + " relative");
    }
    return out;
}

}  // namespace bunchlab
