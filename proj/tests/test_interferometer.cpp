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

#include "bunchlab/bunching.hpp"
#include "bunchlab/counterexample.hpp"
#include "bunchlab/errors.hpp"
#include "bunchlab/interferometer.hpp"
#include "bunchlab/permanent.hpp"
#include "oracles.hpp"

using namespace bunchlab;

namespace {

const double kR = 1.0 / std::numbers::sqrt2;

CMatrix splitter() { return CMatrix::from_rows({{kR, kR}, {kR, -kR}}); }

double perm_re(const CMatrix& a) { return perm_ryser(a).to_complex().real(); }

}  // namespace

TEST_CASE("h_matrix of a 50:50 splitter") {
    const CMatrix h = h_matrix({splitter(), 2, {0}});
    CHECK(max_abs_diff(h, 0.5 * CMatrix::ones(2, 2)) <= 1e-15);
}

TEST_CASE("scene validation") {
    CHECK_THROWS_AS(h_matrix({splitter(), 2, {0, 1}}), DomainError);
    CHECK_THROWS_AS(h_matrix({splitter(), 2, {}}), DomainError);
    CHECK_THROWS_AS(h_matrix({splitter(), 3, {0}}), DomainError);
    CHECK_THROWS_AS(h_matrix({2.0 * splitter(), 2, {0}}), DomainError);
    CHECK_THROWS_AS(h_matrix({CMatrix::identity(3), 2, {5}}), DomainError);
}

TEST_CASE("h_matrix matches the direct formula and the complement identity") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 2 + static_cast<std::size_t>(t % 9);
        const std::size_t n = 1 + static_cast<std::size_t>(t % m);
        const CMatrix u = haar_unitary(m, rng());
        std::vector<std::size_t> kappa, rest;
        for (std::size_t k = 0; k < m; ++k) (k % 3 == static_cast<std::size_t>(t % 3) ? kappa : rest).push_back(k);
        if (kappa.empty() || rest.empty()) continue;
        const CMatrix h = h_matrix({u, n, kappa});
        CHECK(max_abs_diff(h, oracle::h_direct(u, n, kappa)) <= 1e-14);
        CHECK(max_abs_diff(h + h_matrix({u, n, rest}), CMatrix::identity(n)) <= 1e-12);
        const auto chk = check_psd_hermitian(h);
        CHECK(chk.is_psd);
        CHECK(chk.max_eigenvalue <= 1.0 + 1e-10);
    }
}

TEST_CASE("haar_unitary") {
    const CMatrix one = haar_unitary(1, 3);
    CHECK(std::abs(std::abs(one(0, 0)) - 1.0) <= 1e-15);
    for (std::size_t m : {2u, 5u, 12u, 18u}) CHECK(unitarity_residual(haar_unitary(m, m)) <= 1e-12);
    CHECK(haar_unitary(6, 9) == haar_unitary(6, 9));
    CHECK_FALSE(haar_unitary(6, 9) == haar_unitary(6, 10));

    // Determinism snapshot for seed 42, m = 4.
    const cplx snapshot[] = {
        {0x1.c1f2b43fd9d88p-3, 0x1.9ce170b078197p-2},
        {-0x1.bc35830230647p-2, -0x1.65a755423f6b2p-4},
        {-0x1.183bcc658b6c1p-1, 0x1.8207dda8bff5fp-2},
        {0x1.6ea275c3a1c57p-2, 0x1.39c33911a26c6p-3},
        {-0x1.6e6844b77d2dcp-3, 0x1.fc018da6787eep-4},
        {0x1.0853beb29e903p-1, 0x1.26901966199eep-1},
        {-0x1.0a159790525efp-1, -0x1.423f674fd6ffdp-5},
        {0x1.95902ce29b648p-4, -0x1.15e839c036828p-2},
        {-0x1.303a6e63203bcp-1, 0x1.64f34d074dc06p-2},
        {-0x1.4a7065d654407p-2, 0x1.c1f35c79fc4e1p-3},
        {0x1.1545374f57826p-3, 0x1.5c885455f0e87p-2},
        {-0x1.ed701162f747fp-2, -0x1.4dcc0933ccf6dp-4},
        {-0x1.ce2914be4b4c6p-3, -0x1.dc33b672a4b09p-2},
        {0x1.32765120f885bp-3, 0x1.6daf754a72651p-3},
        {-0x1.5c6809249fa48p-4, 0x1.8649f52cf2c59p-2},
        {0x1.788729eb017efp-5, 0x1.72990c26f583ep-1},
    };
    const CMatrix u = haar_unitary(4, 42);
    for (std::size_t k = 0; k < 16; ++k) CHECK(u.data()[k] == snapshot[k]);
}

TEST_CASE("haar_unitary first moment") {
    // E|U_00|^2 = 1/m under the Haar measure.
    const std::size_t m = 4;
    double acc = 0.0;
    const int samples = 4000;
    for (int s = 0; s < samples; ++s) acc += std::norm(haar_unitary(m, 1000 + static_cast<std::uint64_t>(s))(0, 0));
    CHECK(acc / samples == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("embed_rows small cases") {
    const RowEmbedding e = embed_rows(CMatrix::from_rows({{1, 0}}));
    CHECK(e.gamma == doctest::Approx(1.0));
    CHECK(e.scene.u.rows() == 3);
    CHECK(std::abs(e.scene.u(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(e.scene.u(0, 1)) <= 1e-15);
    CHECK(std::abs(e.scene.u(0, 2)) <= 1e-15);

    const RowEmbedding id = embed_rows(CMatrix::identity(2));
    CHECK(id.gamma == doctest::Approx(1.0));
    CHECK(id.completion.max_abs() <= 1e-12);
    CHECK(unitarity_residual(id.scene.u) <= 1e-12);
    for (const auto& z : id.scene.u.data()) CHECK((std::abs(z) <= 1e-12 || std::abs(std::abs(z) - 1.0) <= 1e-12));

    CHECK_THROWS_AS(embed_rows(CMatrix::from_rows({{1, 2}, {2, 4}})), DomainError);
    CHECK_THROWS_AS(embed_rows(CMatrix(3, 2)), DimensionError);
}

TEST_CASE("embed_rows on random blocks") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        const std::size_t r = 1 + static_cast<std::size_t>(t % 3);
        const std::size_t c = r + static_cast<std::size_t>(t % 5);
        const CMatrix mb = oracle::gaussian(r, c, rng);
        const RowEmbedding e = embed_rows(mb);
        CHECK(unitarity_residual(e.scene.u) <= 1e-10);
        const double sg = std::sqrt(e.gamma);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) CHECK(std::abs(e.scene.u(i, j) - sg * mb(i, j)) <= 1e-12);
        CHECK(max_abs_diff(h_matrix(e.scene), e.gamma * oracle::matmul(oracle::dagger(mb), mb)) <= 1e-10);
        CHECK(check_psd_hermitian(h_matrix(e.scene)).max_eigenvalue == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("embedded counterexample") {
    const CounterexampleBundle b = load_counterexample();
    CHECK(b.gamma == doctest::Approx(3.3767e-5).epsilon(1e-3));
    CHECK(1.0 / b.gamma == doctest::Approx(spectral_norm(b.m) * spectral_norm(b.m)).epsilon(1e-12));
    CHECK(b.embedding.scene.u.rows() == 18);
    CHECK(unitarity_residual(b.embedding.scene.u) <= 1e-10);
    CHECK(max_abs_diff(b.h, b.gamma * oracle::matmul(oracle::dagger(b.m), b.m)) <= 1e-10);
    CHECK(check_psd_hermitian(b.h).max_eigenvalue == doctest::Approx(1.0).epsilon(1e-10));
    const BsNetwork net = reck_decompose(b.embedding.scene.u);
    CHECK(max_abs_diff(reconstruct(net), b.embedding.scene.u) <= 1e-9);
}

TEST_CASE("Reck decomposition") {
    const BsNetwork id = reck_decompose(CMatrix::identity(5));
    CHECK(id.elements.empty());
    for (double p : id.phases) CHECK(std::abs(p) <= 1e-15);

    const double theta = 0.7, phi = -1.1;
    const BsNetwork one = reck_decompose(beam_splitter_matrix(theta, phi));
    REQUIRE(one.elements.size() == 1);
    CHECK(max_abs_diff(reconstruct(one), beam_splitter_matrix(theta, phi)) <= 1e-14);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = 2 + static_cast<std::size_t>(t % 17);
        const CMatrix u = haar_unitary(m, rng());
        const BsNetwork net = reck_decompose(u);
        CHECK(net.elements.size() <= m * (m - 1) / 2);
        CHECK(max_abs_diff(reconstruct(net), u) <= 1e-9);
        for (const auto& e : net.elements) CHECK(e.mode_b == e.mode_a + 1);
    }
    CHECK_THROWS_AS(reck_decompose(2.0 * CMatrix::identity(3)), DomainError);
}

TEST_CASE("beam splitter element") {
    const CMatrix t = beam_splitter_matrix(0.3, 0.8);
    CHECK(unitarity_residual(t) <= 1e-15);
    CHECK(std::abs(t(0, 0) - std::polar(std::cos(0.3), 0.8)) <= 1e-15);
    CHECK(std::abs(t(0, 1) + std::sin(0.3)) <= 1e-15);
    CHECK(std::abs(t(1, 0) - std::polar(std::sin(0.3), 0.8)) <= 1e-15);
    CHECK(std::abs(t(1, 1) - std::cos(0.3)) <= 1e-15);
}

TEST_CASE("cascade_rank_one") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const CMatrix u1 = haar_unitary(4, rng());
        const CMatrix u2 = haar_unitary(3, rng());
        const InterferometerScene scene = cascade_rank_one(u1, static_cast<std::size_t>(t % 4), u2);
        CHECK(scene.u.rows() == 6);
        CHECK(unitarity_residual(scene.u) <= 1e-12);
        const CMatrix h = h_matrix(scene);
        const RealVector ev = hermitian_eigenvalues(h);
        CHECK(ev[ev.size() - 2] <= 1e-10 * ev.back());
        const CMatrix s = oracle::gram(4, 3, rng);
        double diag = 1.0;
        for (std::size_t i = 0; i < 4; ++i) diag *= h(i, i).real();
        CHECK(perm_re(hadamard(h, s)) == doctest::Approx(diag * perm_re(s)).epsilon(1e-10));
    }

    // A trivial second stage is single-mode bunching on out_mode.
    const CMatrix u1 = haar_unitary(3, 77);
    const InterferometerScene triv = cascade_rank_one(u1, 1, CMatrix::identity(1));
    CHECK(max_abs_diff(h_matrix(triv), h_matrix({u1, 3, {1}})) <= 1e-14);

    // HOM followed by a splitter: bunching in the splitter's outputs equals
    // single-mode bunching before it.
    const InterferometerScene hom = cascade_rank_one(splitter(), 0, splitter());
    const CMatrix s = CMatrix::ones(2, 2);
    CHECK(bunching_prob(h_matrix(hom), s).probability ==
          doctest::Approx(bunching_prob(h_matrix({splitter(), 2, {0}}), s).probability).epsilon(1e-14));

    CHECK_THROWS_AS(cascade_rank_one(u1, 3, splitter()), IndexError);
}
