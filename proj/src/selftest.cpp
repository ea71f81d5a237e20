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

#include "bunchlab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "bunchlab/bunching.hpp"
#include "bunchlab/distmodels.hpp"
#include "bunchlab/errors.hpp"
#include "bunchlab/interferometer.hpp"
#include "bunchlab/oracle.hpp"
#include "bunchlab/permanent.hpp"
#include "bunchlab/random.hpp"

namespace bunchlab {

namespace {

using Trial = std::function<double(std::mt19937_64&)>;

// Runs `trials` independent trials; each returns an error measure that must
// not exceed `limit`. Exceptions count as failures.
SuiteResult run_suite(std::string name, std::size_t trials, std::uint64_t seed, double limit, const Trial& trial) {
    SuiteResult r;
    r.name = std::move(name);
    r.trials = trials;
    const std::uint64_t suite_seed = splitmix64(seed ^ std::hash<std::string>{}(r.name));
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(suite_seed, t));
        std::string failure;
        double err = 0.0;
        try {
            err = trial(rng);
            if (!(err <= limit)) failure = "error " + std::to_string(err);
        } catch (const Error& e) {
            failure = e.what();
            err = std::numeric_limits<double>::infinity();
        }
        r.worst = std::max(r.worst, err);
        if (!failure.empty()) {
            if (r.failures == 0) r.first_failure = "trial " + std::to_string(t) + ": " + failure;
            ++r.failures;
        }
    }
    return r;
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double perm_real(const CMatrix& a) { return permanent(a).to_complex().real(); }

// Positive part of (perm(H (.) S) - perm(H)) / perm(H).
double excess(const CMatrix& h, const CMatrix& s) {
    const double ph = perm_real(h);
    return std::max(0.0, (perm_real(hadamard(h, s)) - ph) / ph);
}

CMatrix random_h(std::mt19937_64& rng, std::size_t n) {
    return h_matrix(random_scene(pick(rng, n + 1, n + 3), n, rng));
}

GramSpec random_structured_spec(std::mt19937_64& rng, std::size_t n, std::size_t variant) {
    switch (variant % 5) {
        case 0: return GramSpec::x_model(n, uniform(rng));
        case 1: {
            RealVector x(n);
            for (double& v : x) v = uniform(rng);
            return GramSpec::xi_model(x);
        }
        case 2: return GramSpec::two_set(pick(rng, 1, n - 1), n, uniform(rng));
        case 3: {
            const std::size_t k = pick(rng, 1, n - 1);
            return GramSpec::direct_sum({GramSpec::x_model(k, uniform(rng)), GramSpec::all_ones(n - k)});
        }
        default: {
            RealVector x(n);
            for (double& v : x) v = uniform(rng);
            return GramSpec::interpolated(random_gram(n, n, rng), x);
        }
    }
}

}  // namespace

SelftestReport run_selftest(bool quick, std::uint64_t seed) {
    SelftestReport rep;
    rep.seed = seed;
    rep.quick = quick;
    auto count = [quick](std::size_t full) { return quick ? std::max<std::size_t>(full / 5, 1) : full; };

    rep.suites.push_back(run_suite("oracle_equivalence", count(200), seed, 1e-10, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 1, kOracleMaxPhotons);
        const std::size_t m = pick(rng, std::max<std::size_t>(n, 2), kOracleMaxModes);
        const std::size_t L = pick(rng, 1, kOracleMaxInternal);
        const InterferometerScene scene = random_scene(m, n, rng);
        std::vector<ComplexVector> states;
        for (std::size_t i = 0; i < n; ++i) states.push_back(random_state(L, rng));
        const double brute = simulate_bunching(scene.u, states, scene.kappa);
        const double perm = bunching_prob(h_matrix(scene), gram_from_vectors(states)).probability;
        return std::abs(brute - perm);
    }));

    rep.suites.push_back(run_suite("engine_agreement", count(500), seed, 1e-10, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 1, 8);
        const CMatrix g = complex_gaussian(n, n, rng);
        const PermanentValue r = perm_ryser(g);
        return std::max(relative_difference(r, perm_glynn(g)), relative_difference(r, perm_naive(g)));
    }));

    rep.suites.push_back(run_suite("small_n_bound", count(1000), seed, 1e-9, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 1, 3);
        return excess(random_h(rng, n), random_gram(n, pick(rng, 1, 3), rng));
    }));

    rep.suites.push_back(run_suite("rank_one_factorization", count(1000), seed, 1e-10, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 1, 5);
        const CMatrix h = h_matrix(random_scene(pick(rng, n + 1, n + 3), n, rng, 1));
        const CMatrix s = random_gram(n, pick(rng, 1, n), rng);
        double diag = 1.0;
        for (std::size_t i = 0; i < n; ++i) diag *= h(i, i).real();
        const double expected = diag * perm_real(s);
        return std::abs(perm_real(hadamard(h, s)) - expected) / std::abs(expected);
    }));

    rep.suites.push_back(run_suite("nonnegative_gauge_class", count(1000), seed, 1e-9, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 2, 5);
        CMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = uniform(rng);
        CMatrix h = b.adjoint() * b;
        h *= 1.0 / hermitian_eigenvalues(h).back();
        RealVector thetas(n);
        for (double& t : thetas) t = uniform(rng, -std::numbers::pi, std::numbers::pi);
        const CMatrix hg = gauge_transform(h, thetas);
        if (!nonneg_class_test(hg).member) return std::numeric_limits<double>::infinity();
        return excess(hg, random_gram(n, pick(rng, 1, n), rng));
    }));

    rep.suites.push_back(run_suite("structured_models", count(1000), seed, 1e-9, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 2, 5);
        const CMatrix s = compile_gram(random_structured_spec(rng, n, pick(rng, 0, 4)));
        return excess(random_h(rng, n), s);
    }));

    rep.suites.push_back(run_suite("mixed_ensembles", count(300), seed, 1e-9, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 2, 4);
        const CMatrix h = random_h(rng, n);
        MixedEnsemble e;
        switch (pick(rng, 0, 2)) {
            case 0: {
                RealVector a(pick(rng, 2, 3));
                double sum = 0.0;
                for (double& v : a) sum += (v = uniform(rng, 0.05, 1.0));
                for (double& v : a) v /= sum;
                e = MixedEnsemble::uniform(n, a);
                break;
            }
            case 1: {
                std::vector<RealVector> per(n, RealVector(2));
                for (auto& p : per) {
                    p[0] = uniform(rng);
                    p[1] = 1.0 - p[0];
                }
                e = MixedEnsemble::shared_basis(per);
                break;
            }
            default: {
                RealVector a(n);
                for (double& v : a) v = uniform(rng);
                e = MixedEnsemble::rank_two(a, uniform(rng));
            }
        }
        const double ph = perm_real(h);
        return std::max(0.0, (bunching_prob_mixed(h, e).probability - ph) / ph);
    }));

    rep.suites.push_back(run_suite("delay_derivatives", count(100), seed, 1.0, [](std::mt19937_64& rng) {
        const std::size_t n = pick(rng, 2, 6);
        const CMatrix h = random_h(rng, n);
        RealVector tau(n);
        double nrm = 0.0;
        for (double& t : tau) {
            t = uniform(rng, -1.0, 1.0);
            nrm += t * t;
        }
        for (double& t : tau) t /= std::sqrt(nrm);
        const double d = uniform(rng, 0.05, 1.0);
        const MatrixFamily fam = time_delay_family(h, tau);
        const CMatrix g = fam.value(d);
        const double generic = perm_derivative_generic(g, fam.derivative(d)).real();
        const double closed = delay_derivative(h, DelayProfile{tau, d, 1.0}).first;
        const double fd = perm_derivative_fd(fam, d).real();
        const double tol = 1e-6 * std::abs(generic) + 1e-10 * std::abs(perm_real(g));
        // Reported in units of the tolerance.
        return std::max(std::abs(generic - closed), std::abs(generic - fd)) / tol;
    }));

    rep.suites.push_back(run_suite("complement_identity", count(100), seed, 1e-12, [](std::mt19937_64& rng) {
        const std::size_t m = pick(rng, 2, 10);
        const InterferometerScene scene = random_scene(m, pick(rng, 1, m), rng);
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < m; ++k)
            if (!std::binary_search(scene.kappa.begin(), scene.kappa.end(), k)) rest.push_back(k);
        const CMatrix sum = h_matrix(scene) + h_matrix_for_modes(scene.u, scene.n, rest);
        return max_abs_diff(sum, CMatrix::identity(scene.n));
    }));

    rep.suites.push_back(run_suite("reck_round_trip", count(200), seed, 1e-9, [](std::mt19937_64& rng) {
        const CMatrix u = haar_unitary(pick(rng, 2, 18), rng());
        return max_abs_diff(reconstruct(reck_decompose(u)), u);
    }));

    rep.all_pass = std::all_of(rep.suites.begin(), rep.suites.end(), [](const SuiteResult& s) { return s.failures == 0; });
    return rep;
}

std::string format_selftest(const SelftestReport& report) {
    std::string out;
    char buf[256];
    std::size_t trials = 0;
    std::size_t failures = 0;
    for (const auto& s : report.suites) {
        std::snprintf(buf, sizeof buf, "%-26s %s  trials=%zu failures=%zu worst=%.3e\n", s.name.c_str(),
                      s.failures == 0 ? "PASS" : "FAIL", s.trials, s.failures, s.worst);
        out += buf;
        if (!s.first_failure.empty()) out += "  first failure: " + s.first_failure + "\n";
        trials += s.trials;
        failures += s.failures;
    }
    std::snprintf(buf, sizeof buf, "selftest seed=%llu %s: %zu suites, %zu trials, %zu failures\n",
                  static_cast<unsigned long long>(report.seed), report.quick ? "quick" : "full", report.suites.size(),
                  trials, failures);
    out += buf;
    return out;
}

}  // namespace bunchlab
