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
#include <numbers>
#include <random>

#include "bunchlab/distmodels.hpp"
#include "bunchlab/errors.hpp"
#include "bunchlab/permanent.hpp"
#include "oracles.hpp"

using namespace bunchlab;

namespace {

// Explicit internal states |phi_i> = x_i |chi> + sqrt(1 - x_i^2) |eta_i>.
CMatrix xi_states_gram(const RealVector& x) {
    const std::size_t n = x.size();
    std::vector<ComplexVector> states;
    for (std::size_t i = 0; i < n; ++i) {
        ComplexVector v(n + 1, 0.0);
        v[0] = x[i];
        v[i + 1] = std::sqrt(1.0 - x[i] * x[i]);
        states.push_back(v);
    }
    return gram_from_vectors(states);
}

double perm_re(const CMatrix& a) { return perm_ryser(a).to_complex().real(); }

}  // namespace

TEST_CASE("x_model limits") {
    CHECK(compile_gram(GramSpec::x_model(4, 1.0)) == CMatrix::ones(4, 4));
    CHECK(compile_gram(GramSpec::x_model(4, 0.0)) == CMatrix::identity(4));
    const CMatrix s = compile_gram(GramSpec::x_model(3, 0.5));
    CHECK(s(0, 1).real() == 0.25);
    CHECK(s(2, 2).real() == 1.0);
    CHECK_THROWS_AS(compile_gram(GramSpec::x_model(3, 1.5)), DomainError);
    CHECK_THROWS_AS(compile_gram(GramSpec::x_model(3, -0.1)), DomainError);
}

TEST_CASE("xi_model against explicit states") {
    const RealVector x{0.5, 1.0, 0.8};
    const CMatrix s = compile_gram(GramSpec::xi_model(x));
    CHECK(s(0, 1).real() == doctest::Approx(0.5));
    CHECK(s(0, 2).real() == doctest::Approx(0.4));
    CHECK(s(1, 2).real() == doctest::Approx(0.8));
    CHECK(max_abs_diff(s, xi_states_gram(x)) <= 1e-15);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        RealVector xs(2 + static_cast<std::size_t>(t % 6));
        for (double& v : xs) v = u(rng);
        CHECK(max_abs_diff(compile_gram(GramSpec::xi_model(xs)), xi_states_gram(xs)) <= 1e-15);
    }
    CHECK(compile_gram(GramSpec::x_model(4, 0.7)) == compile_gram(GramSpec::xi_model({0.7, 0.7, 0.7, 0.7})));
}

TEST_CASE("interpolated model") {
    const RealVector x{0.3, 0.9, 0.6};
    CHECK(max_abs_diff(compile_gram(GramSpec::interpolated(GramSpec::all_ones(3), x)),
                       compile_gram(GramSpec::xi_model(x))) <= 1e-15);
    std::mt19937_64 rng(2);
    const CMatrix chi = oracle::gram(3, 2, rng);
    const CMatrix s = compile_gram(GramSpec::interpolated(chi, x));
    CHECK(max_abs_diff(s, oracle::hadamard(chi, compile_gram(GramSpec::xi_model(x)))) <= 1e-15);
    CHECK_THROWS_AS(compile_gram(GramSpec::interpolated(CMatrix::from_rows({{1, 2}, {2, 1}}), {0.5, 0.5})), DomainError);
    CHECK_THROWS_AS(compile_gram(GramSpec::interpolated(chi, {0.5, 0.5})), DimensionError);
}

TEST_CASE("two_set and direct_sum") {
    const CMatrix s = compile_gram(GramSpec::two_set(1, 2, 0.6));
    CHECK(max_abs_diff(s, CMatrix::from_rows({{1, 0.6}, {0.6, 1}})) <= 1e-15);
    const CMatrix b = compile_gram(GramSpec::two_set(2, 5, 0.3));
    CHECK(b(0, 1).real() == 1.0);
    CHECK(b(2, 4).real() == 1.0);
    CHECK(b(1, 3).real() == doctest::Approx(0.3));
    CHECK(compile_gram(GramSpec::two_set(0, 3, 0.5)) == CMatrix::ones(3, 3));
    CHECK_THROWS_AS(compile_gram(GramSpec::two_set(4, 3, 0.5)), DomainError);
    CHECK_THROWS_AS(compile_gram(GramSpec::two_set(1, 3, 1.5)), DomainError);

    const CMatrix ds = compile_gram(GramSpec::direct_sum({GramSpec::all_ones(2), GramSpec::x_model(3, 0.5)}));
    CHECK(ds.rows() == 5);
    CHECK(ds(0, 1).real() == 1.0);
    CHECK(ds(1, 2) == cplx{});
    CHECK(ds(3, 4).real() == 0.25);
}

TEST_CASE("direct_sum factorizes perm(H (.) S)") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const std::size_t k1 = 1 + static_cast<std::size_t>(t % 3);
        const std::size_t k2 = 1 + static_cast<std::size_t>((t / 3) % 4);
        const std::size_t n = k1 + k2;
        const CMatrix g = oracle::gaussian(n, n, rng);
        const CMatrix h = g.adjoint() * g;
        const CMatrix s1 = oracle::gram(k1, 2, rng);
        const CMatrix s2 = oracle::gram(k2, 2, rng);
        const CMatrix s = compile_gram(GramSpec::direct_sum({GramSpec::explicit_matrix(s1), GramSpec::explicit_matrix(s2)}));
        std::vector<std::size_t> i1(k1), i2(k2);
        std::iota(i1.begin(), i1.end(), 0);
        std::iota(i2.begin(), i2.end(), k1);
        const double lhs = perm_re(hadamard(h, s));
        const double rhs = perm_re(hadamard(h.principal(i1), s1)) * perm_re(hadamard(h.principal(i2), s2));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("time delay") {
    const DelayProfile zero{{0.6, 0.8}, 0.0, 1.0};
    CHECK(compile_time_delay(zero) == CMatrix::ones(2, 2));
    const double r = 1.0 / std::sqrt(2.0);
    const CMatrix s = compile_time_delay(DelayProfile{{r, -r}, 1.0, 1.0});
    CHECK(s(0, 1).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    const double e = 0.5;
    const CMatrix same = compile_time_delay(DelayProfile{{e, e, e, e}, 3.0, 1.0});
    CHECK(max_abs_diff(same, CMatrix::ones(4, 4)) <= 1e-15);

    // Raw arrival times: S_ij = exp(-(t_i - t_j)^2 / (2 sigma)^2).
    const RealVector t{0.0, 0.3, -1.1};
    const double sigma = 0.7;
    const CMatrix st = compile_gram(GramSpec::time_delay(DelayProfile::from_arrival_times(t, sigma)));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double want = std::exp(-(t[i] - t[j]) * (t[i] - t[j]) / (4 * sigma * sigma));
            CHECK(st(i, j).real() == doctest::Approx(want).epsilon(1e-14));
            CHECK(st(i, j).imag() == 0.0);
            CHECK(st(i, j).real() > 0.0);
        }
    CHECK_THROWS_AS(compile_time_delay(DelayProfile{{1.0, 1.0}, 0.5, 1.0}), DomainError);
    CHECK_THROWS_AS(compile_time_delay(DelayProfile{{1.0, 0.0}, -0.5, 1.0}), DomainError);
}

TEST_CASE("gauge transform") {
    std::mt19937_64 rng(4);
    const CMatrix s = oracle::gram(4, 3, rng);
    CHECK(gauge_transform(s, RealVector(4, 0.0)) == s);
    const RealVector th{0.3, -1.2, 2.0, 0.1};
    const CMatrix g = gauge_transform(s, th);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g(i, i) == s(i, i));
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(g(i, j) - std::polar(1.0, th[j] - th[i]) * s(i, j)) <= 1e-15);
    }
    CHECK_THROWS_AS(gauge_transform(s, RealVector(3, 0.0)), DimensionError);

    // Gauge invariance of perm(H (.) S) for PSD H.
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 6);
        const CMatrix a = oracle::gaussian(n, n, rng);
        const CMatrix h = a.adjoint() * a;
        const CMatrix sn = oracle::gram(n, 2, rng);
        RealVector t1(n), t2(n);
        for (std::size_t i = 0; i < n; ++i) {
            t1[i] = ang(rng);
            t2[i] = ang(rng);
        }
        const cplx p1 = perm_ryser(hadamard(h, gauge_transform(sn, t1))).to_complex();
        const cplx p2 = perm_ryser(hadamard(h, gauge_transform(sn, t2))).to_complex();
        CHECK(oracle::rel(p1, p2) <= 1e-12);
    }
}

TEST_CASE("nonnegative class membership") {
    const CMatrix pos = CMatrix::from_rows({{1, 0.5, 0.2}, {0.5, 1, 0.1}, {0.2, 0.1, 1}});
    const NonnegClassResult r = nonneg_class_test(pos);
    CHECK(r.member);
    REQUIRE(r.thetas.has_value());
    for (double t : *r.thetas) CHECK(std::abs(t) <= 1e-15);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 7);
        RealVector th(n);
        for (double& v : th) v = ang(rng);
        // D^dagger E D for unit-modulus D.
        const CMatrix h = gauge_transform(CMatrix::ones(n, n), th);
        const NonnegClassResult m = nonneg_class_test(h);
        REQUIRE(m.member);
        const CMatrix back = gauge_transform(h, *m.thetas);
        for (const auto& z : back.data()) {
            CHECK(z.real() >= -1e-12);
            CHECK(std::abs(z.imag()) <= 1e-12);
        }
    }

    // Three vectors whose pairwise overlaps all carry phase e^{2 pi i / 3}.
    const double w = 2.0 * std::numbers::pi / 3.0;
    CMatrix wind = CMatrix::identity(3);
    wind(0, 1) = wind(1, 2) = wind(0, 2) = std::polar(0.4, w);
    wind(1, 0) = wind(2, 1) = wind(2, 0) = std::polar(0.4, -w);
    REQUIRE(check_psd_hermitian(wind).is_psd);
    CHECK_FALSE(nonneg_class_test(wind).member);
    for (int t = 0; t < 10; ++t) {
        const RealVector th{ang(rng), ang(rng), ang(rng)};
        CHECK_FALSE(nonneg_class_test(gauge_transform(wind, th)).member);
    }

    // Zero entries are wildcards: a block-diagonal matrix with a winding-free
    // pattern on each block is a member.
    CMatrix blocks = CMatrix::identity(4);
    blocks(0, 1) = std::polar(0.5, 1.0);
    blocks(1, 0) = std::conj(blocks(0, 1));
    blocks(2, 3) = std::polar(0.3, -2.0);
    blocks(3, 2) = std::conj(blocks(2, 3));
    CHECK(nonneg_class_test(blocks).member);
}

TEST_CASE("validate_gram and kinds") {
    CHECK_NOTHROW(validate_gram(CMatrix::identity(3)));
    CHECK_THROWS_AS(validate_gram(2.0 * CMatrix::identity(3)), DomainError);
    CHECK_THROWS_AS(validate_gram(CMatrix::from_rows({{1, 2}, {2, 1}})), DomainError);
    CHECK(GramSpec::two_set(1, 4, 0.2).kind() == "two_set");
    CHECK(GramSpec::direct_sum({GramSpec::identity(2), GramSpec::all_ones(3)}).dimension() == 5);
    CHECK(GramSpec::time_delay(DelayProfile{{1.0, 0.0, 0.0}, 0.1, 1.0}).dimension() == 3);
}
