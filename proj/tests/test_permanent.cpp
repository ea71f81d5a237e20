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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bunchlab/counterexample.hpp"
#include "bunchlab/errors.hpp"
#include "bunchlab/permanent.hpp"
#include "oracles.hpp"

using namespace bunchlab;

namespace {

cplx value(const PermanentValue& v) { return v.to_complex(); }

}  // namespace

TEST_CASE("closed-form permanents") {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (auto e : {PermEngine::ryser, PermEngine::glynn}) {
            CHECK(value(permanent(CMatrix::identity(n), e)).real() == doctest::Approx(1.0).epsilon(1e-14));
            CHECK(value(permanent(CMatrix::ones(n, n), e)).real() == doctest::Approx(oracle::factorial(n)).epsilon(1e-13));
        }
    }
    CHECK(value(perm_glynn(CMatrix::ones(10, 10))).real() == 3628800.0);

    const cplx a{1.5, -0.2}, b{0.3, 0.7}, c{-2.0, 0.1}, d{0.4, 0.4};
    const CMatrix two = CMatrix::from_rows({{a, b}, {c, d}});
    for (auto e : {PermEngine::ryser, PermEngine::glynn, PermEngine::naive})
        CHECK(oracle::rel(value(permanent(two, e)), a * d + b * c) <= 1e-15);

    CHECK(value(perm_naive(CMatrix::from_rows({{cplx{2.5, -1.0}}}))) == cplx(2.5, -1.0));

    CMatrix near = CMatrix::identity(3);
    near(0, 1) = near(1, 0) = 0.5;
    CHECK(value(perm_naive(near)).real() == doctest::Approx(1.25));

    const cplx diag[] = {2.0, -3.0, cplx{0.0, 1.0}, 0.5};
    CHECK(oracle::rel(value(perm_ryser(CMatrix::diagonal(diag))), cplx(0.0, -3.0)) <= 1e-15);
}

TEST_CASE("engines agree with the Laplace oracle") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
        const CMatrix a = oracle::gaussian(n, n, rng);
        const cplx ref = oracle::perm(a);
        CHECK(oracle::rel(value(perm_ryser(a)), ref) <= 1e-10);
        CHECK(oracle::rel(value(perm_glynn(a)), ref) <= 1e-10);
        CHECK(oracle::rel(value(perm_naive(a)), ref) <= 1e-10);
    }
}

TEST_CASE("8x8 Ryser matches naive tightly") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        const CMatrix a = oracle::gaussian(8, 8, rng);
        CHECK(relative_difference(perm_ryser(a), perm_naive(a)) <= 1e-11);
    }
}

TEST_CASE("zero rows and columns") {
    CMatrix a = CMatrix::ones(5, 5);
    for (std::size_t j = 0; j < 5; ++j) a(2, j) = 0.0;
    for (auto e : {PermEngine::ryser, PermEngine::glynn, PermEngine::naive}) CHECK(permanent(a, e).is_zero());
    CHECK(perm_ryser(CMatrix::zeros(3, 3)).log2_scale == 0);
}

TEST_CASE("guards and parsing") {
    CHECK_THROWS_AS(perm_ryser(CMatrix::ones(25, 25)), SizeError);
    CHECK_THROWS_AS(perm_glynn(CMatrix::ones(25, 25)), SizeError);
    CHECK_THROWS_AS(perm_naive(CMatrix::ones(10, 10)), SizeError);
    CHECK_THROWS_AS(perm_ryser(CMatrix(2, 3)), DimensionError);
    CHECK(parse_engine("glynn") == PermEngine::glynn);
    CHECK(engine_name(PermEngine::naive) == "naive");
    CHECK_THROWS_AS(parse_engine("gauss"), ParseError);
}

TEST_CASE("PermanentValue normalization") {
    const PermanentValue v = PermanentValue::normalized({12.0, 0.0}, 3);
    CHECK(std::abs(v.value) >= 1.0);
    CHECK(std::abs(v.value) < 2.0);
    CHECK(v.to_complex().real() == 96.0);
    CHECK(PermanentValue::normalized({}, 7).log2_scale == 0);
    // perm(c A) = c^n perm(A) far outside the double range.
    std::mt19937_64 rng(13);
    const CMatrix a = oracle::gaussian(14, 14, rng);
    const PermanentValue base = perm_ryser(a);
    for (double c : {1e30, 1e-30}) {
        for (auto e : {PermEngine::ryser, PermEngine::glynn}) {
            const PermanentValue big = permanent(c * a, e);
            CHECK(std::isfinite(big.value.real()));
            const double got = std::log2(std::abs(big.value)) + big.log2_scale;
            const double want = std::log2(std::abs(base.value)) + base.log2_scale + 14 * std::log2(c);
            CHECK(std::abs(got - want) <= 1e-11);
            CHECK(std::abs(std::arg(big.value / base.value)) <= 1e-11);
        }
    }
}

TEST_CASE("row and column scaling factor out") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        const CMatrix a = oracle::gaussian(n, n, rng);
        std::vector<cplx> d1(n), d2(n);
        cplx prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            d1[i] = std::polar(u(rng), u(rng));
            d2[i] = std::polar(u(rng), u(rng));
            prod *= d1[i] * d2[i];
        }
        const CMatrix scaled = CMatrix::diagonal(d1) * a * CMatrix::diagonal(d2);
        CHECK(oracle::rel(value(perm_ryser(scaled)), prod * value(perm_ryser(a))) <= 1e-12);
    }
}

TEST_CASE("simultaneous permutation invariance") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 9);
        const CMatrix a = oracle::gaussian(n, n, rng);
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        CMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = a(p[i], p[j]);
        CHECK(relative_difference(perm_ryser(a), perm_ryser(b)) <= 1e-12);
    }
}

TEST_CASE("PSD permanents are real and nonnegative") {
    std::mt19937_64 rng(9);
    for (std::size_t n = 2; n <= 16; n += 2) {
        const CMatrix s = oracle::gram(n, 3, rng);
        const cplx p = value(perm_ryser(s));
        CHECK(p.real() > 0.0);
        CHECK(std::abs(p.imag()) <= 1e-9 * p.real());
    }
}

TEST_CASE("minor permanents") {
    const CMatrix two = CMatrix::from_rows({{1, 2}, {3, 4}});
    CHECK(value(perm_minor(two, 0, 0)).real() == 4.0);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(value(perm_minor(CMatrix::ones(5, 5), i, j)).real() == doctest::Approx(24.0));
    CHECK_THROWS_AS(perm_minor(two, 2, 0), IndexError);

    std::mt19937_64 rng(10);
    const CMatrix a = oracle::gaussian(6, 6, rng);
    cplx laplace = 0.0;
    for (std::size_t j = 0; j < 6; ++j) laplace += a(0, j) * value(perm_minor(a, 0, j));
    CHECK(oracle::rel(laplace, value(perm_naive(a))) <= 1e-12);

    const CMatrix batched = minor_permanents(a);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(oracle::rel(batched(i, j), oracle::perm(a.without(i, j))) <= 1e-11);

    CMatrix z = a;
    for (std::size_t j = 0; j < 6; ++j) z(3, j) = 0.0;
    const CMatrix bz = minor_permanents(z);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(std::abs(bz(i, j) - oracle::perm(z.without(i, j))) <= 1e-11 * (1 + std::abs(bz(i, j))));
}

TEST_CASE("F matrix") {
    const FMatrix id = f_matrix(CMatrix::identity(3));
    CHECK(max_abs_diff(id.entries, CMatrix::identity(3)) <= 1e-15);
    const FMatrix ones = f_matrix(CMatrix::ones(4, 4));
    CHECK(max_abs_diff(ones.entries, 6.0 * CMatrix::ones(4, 4)) <= 1e-13);
    CHECK_THROWS_AS(f_matrix(CMatrix::ones(1, 1)), DimensionError);
    CHECK_THROWS_AS(f_matrix(CMatrix::ones(19, 19)), SizeError);

    std::mt19937_64 rng(12);
    for (std::size_t n : {2u, 5u, 9u, 14u}) {
        const CMatrix s = oracle::gram(n, 2, rng);
        const FMatrix f = f_matrix(s);
        CHECK(f.laplace_residual <= 1e-9);
        for (std::size_t i = 0; i < n; ++i) {
            cplx row = 0.0, col = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row += f.entries(i, j);
                col += f.entries(j, i);
            }
            CHECK(oracle::rel(row, f.permanent) <= 1e-9);
            CHECK(oracle::rel(col, f.permanent) <= 1e-9);
        }
    }
}

TEST_CASE("16x16 counterexample: Ryser and Glynn agree, F^A spectrum") {
    const CounterexampleBundle b = load_counterexample();
    CHECK(relative_difference(perm_ryser(b.a), perm_glynn(b.a)) <= 1e-9);
    CHECK(relative_difference(perm_ryser(b.h), perm_glynn(b.h)) <= 1e-9);
    const FMatrix f = f_matrix(b.a);
    CHECK(sym_eig_max(f.entries).value == doctest::Approx(2.2632e64).epsilon(5e-4));
    CHECK(f.permanent.real() == doctest::Approx(2.1978e64).epsilon(5e-4));
}
