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

#include "bunchlab/counterexample.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <random>

#include "bunchlab/errors.hpp"
#include "bunchlab/parallel.hpp"
#include "bunchlab/random.hpp"

namespace bunchlab {

namespace {

const CounterexampleData kPublished{
    {{{25, -23, 29, 11, -20, 47, 18, 29, 35, -25, -32, -28, -18, 25, 12, -36},
      {8, 38, -11, 34, 61, 42, -23, 10, 35, 24, 11, 9, 13, -9, 34, 22}}},
    {{{30, 20, 51, -43, -11, 47, 4, 27, -26, -2, 11, 37, 64, 26, -28, 23},
      {0, 20, 10, 4, 28, 12, -46, 24, -43, 10, -17, -63, -23, 50, -40, 15}}},
};

CMatrix factor_matrix(const CounterexampleData& data) {
    CMatrix m(2, 16);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 16; ++c) m(r, c) = {static_cast<double>(data.m_r[r][c]), static_cast<double>(data.m_i[r][c])};
    return m;
}

// Rethrows the in-flight library error with "stage: " prefixed, keeping its type.
[[noreturn]] void rethrow_staged(const std::string& stage) {
    try {
        throw;
    } catch (const DimensionError& e) {
        throw DimensionError(stage + ": " + e.what());
    } catch (const DomainError& e) {
        throw DomainError(stage + ": " + e.what());
    } catch (const SizeError& e) {
        throw SizeError(stage + ": " + e.what());
    } catch (const IndexError& e) {
        throw IndexError(stage + ": " + e.what());
    } catch (const PrecisionError& e) {
        throw PrecisionError(stage + ": " + e.what());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(stage + ": " + e.what());
    } catch (const DataCorruptionError& e) {
        throw DataCorruptionError(stage + ": " + e.what());
    } catch (const ParseError& e) {
        throw ParseError(stage + ": " + e.what());
    } catch (const Error& e) {
        throw Error(stage + ": " + e.what());
    }
}

template <typename Fn>
auto staged(const std::string& stage, Fn&& fn) {
    try {
        return fn();
    } catch (const Error&) {
        rethrow_staged(stage);
    }
}

QuotedCheck check(std::string name, double computed, double expected, double tolerance, bool relative) {
    QuotedCheck c{std::move(name), computed, expected, tolerance, relative, false};
    const double err = std::abs(computed - expected);
    c.pass = std::isfinite(computed) && err <= (relative ? tolerance * std::abs(expected) : tolerance);
    return c;
}

}  // namespace

std::uint64_t checksum(const CounterexampleData& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](int v) {
        const auto u = static_cast<std::uint32_t>(v);
        for (int b = 0; b < 4; ++b) {
            h ^= (u >> (8 * b)) & 0xFFU;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& row : data.m_r)
        for (int v : row) feed(v);
    for (const auto& row : data.m_i)
        for (int v : row) feed(v);
    return h;
}

const CounterexampleData& published_counterexample() { return kPublished; }

CounterexampleBundle load_counterexample(const CounterexampleData& data) {
    if (checksum(data) != kCounterexampleChecksum) {
        throw DataCorruptionError("load_counterexample: embedded matrix data failed its checksum");
    }
    CounterexampleBundle b;
    b.data = data;
    b.m = factor_matrix(data);
    b.a = b.m.adjoint() * b.m;

    const RealVector ev = hermitian_eigenvalues(b.a);
    const double top = ev.back();
    if (!(ev[ev.size() - 2] > 1e-8 * top) || std::abs(ev[ev.size() - 3]) > 1e-8 * top) {
        throw DomainError("load_counterexample: A is not of rank 2");
    }

    b.embedding = embed_rows(b.m);
    b.gamma = b.embedding.gamma;
    b.h = h_matrix(b.embedding.scene);
    if (max_abs_diff(b.h, b.gamma * b.a) > 1e-10) {
        throw PrecisionError("load_counterexample: embedded H differs from gamma * A");
    }
    return b;
}

ReproductionReport reproduce_counterexample(const ReproductionOptions& options) {
    ReproductionReport rep;
    const CounterexampleBundle bundle = staged("load", [&] { return load_counterexample(options.data); });
    rep.gamma = bundle.gamma;

    rep.anomaly_a = staged("anomaly_criterion(A)", [&] { return anomaly_criterion(bundle.a); });
    rep.anomaly_h = staged("anomaly_criterion(H)", [&] { return anomaly_criterion(bundle.h); });
    rep.ratio = rep.anomaly_a.lambda_max_r / rep.anomaly_a.perm_g;
    const RealVector& tau = rep.anomaly_h.tau_max;

    rep.derivative_at_zero = staged("delay_derivative", [&] { return delay_derivative(bundle.h, DelayProfile{tau, 0.0, 1.0}); });
    rep.scan = staged("violation_scan", [&] { return violation_scan(bundle.h, tau, options.grid); });

    staged("reck_decompose", [&] {
        const CMatrix& u = bundle.embedding.scene.u;
        const BsNetwork net = reck_decompose(u);
        rep.reck_elements = net.elements.size();
        rep.reck_nontrivial = static_cast<std::size_t>(std::count_if(
            net.elements.begin(), net.elements.end(),
            [](const BeamSplitter& e) { return std::abs(std::sin(e.theta)) > kTrivialMixing; }));
        rep.reck_error = max_abs_diff(reconstruct(net), u);
        return 0;
    });

    rep.checks = {
        check("gamma", rep.gamma, 3.3767e-5, 5e-4, true),
        check("perm_A", rep.anomaly_a.perm_g, 2.1978e64, 5e-4, true),
        check("lambda_max_F_A", rep.anomaly_a.lambda_max_r, 2.2632e64, 5e-4, true),
        check("ratio_lambda_over_perm", rep.ratio, 1.0298, 5e-4, true),
        check("quadratic_coefficient", rep.scan.quadratic_coefficient, 0.0595, 0.0012, false),
        check("d_max", rep.scan.d_max, 0.6201, 1e-3, false),
        check("R_d_max", rep.scan.r_max, 1.0123, 5e-4, false),
        check("perm_H", rep.scan.perm_h, 6.2797e-8, 5e-4, true),
        check("perm_HS_d_max", rep.scan.perm_hs_at_max, 6.3568e-8, 5e-4, true),
        check("second_derivative_at_zero_positive", rep.derivative_at_zero.second_at_zero > 0.0 ? 1.0 : 0.0, 1.0, 0.0,
              false),
        check("reck_reconstruction_error", rep.reck_error, 0.0, 1e-9, false),
    };
    rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const QuotedCheck& c) { return c.pass; });
    return rep;
}

SamplerSpec SamplerSpec::parse(const std::string& text) {
    std::string name = text;
    std::string arg;
    if (const auto open = text.find('('); open != std::string::npos) {
        if (text.back() != ')') throw ParseError("sampler: missing ')' in '" + text + "'");
        name = text.substr(0, open);
        arg = text.substr(open + 1, text.size() - open - 2);
    }
    SamplerSpec s;
    auto no_arg = [&] {
        if (!arg.empty()) throw ParseError("sampler '" + name + "' takes no argument");
    };
    if (name == "haar_gram") {
        no_arg();
        s.kind = SamplerKind::haar_gram;
    } else if (name == "wishart") {
        no_arg();
        s.kind = SamplerKind::wishart;
    } else if (name == "structured_interp") {
        no_arg();
        s.kind = SamplerKind::structured_interp;
    } else if (name == "low_rank") {
        s.kind = SamplerKind::low_rank;
        if (!arg.empty()) {
            std::size_t used = 0;
            long r = 0;
            try {
                r = std::stol(arg, &used);
            } catch (const std::exception&) {
                throw ParseError("sampler: bad rank '" + arg + "'");
            }
            if (used != arg.size() || r < 1) throw ParseError("sampler: bad rank '" + arg + "'");
            s.rank = static_cast<std::size_t>(r);
        }
    } else if (name == "near_counterexample") {
        s.kind = SamplerKind::near_counterexample;
        if (!arg.empty()) {
            std::size_t used = 0;
            try {
                s.epsilon = std::stod(arg, &used);
            } catch (const std::exception&) {
                throw ParseError("sampler: bad epsilon '" + arg + "'");
            }
            if (used != arg.size() || !(s.epsilon >= 0.0)) throw ParseError("sampler: bad epsilon '" + arg + "'");
        }
    } else {
        throw ParseError("unknown sampler '" + text + "'");
    }
    return s;
}

std::string SamplerSpec::to_string() const {
    switch (kind) {
        case SamplerKind::haar_gram: return "haar_gram";
        case SamplerKind::wishart: return "wishart";
        case SamplerKind::structured_interp: return "structured_interp";
        case SamplerKind::low_rank: return "low_rank(" + std::to_string(rank) + ")";
        case SamplerKind::near_counterexample: {
            char buf[32];
            const auto res = std::to_chars(buf, buf + sizeof buf, epsilon);
            return "near_counterexample(" + std::string(buf, res.ptr) + ")";
        }
    }
    return "unknown";
}

CMatrix draw_sample(const SamplerSpec& sampler, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    switch (sampler.kind) {
        case SamplerKind::haar_gram: return random_gram(n, n, rng);
        case SamplerKind::wishart: {
            const CMatrix g = complex_gaussian(n, n, rng);
            CMatrix a = g.adjoint() * g;
            double tr = 0.0;
            for (std::size_t i = 0; i < n; ++i) tr += a(i, i).real();
            return (1.0 / tr) * a;
        }
        case SamplerKind::low_rank: {
            const CMatrix g = complex_gaussian(sampler.rank, n, rng);
            return g.adjoint() * g;
        }
        case SamplerKind::structured_interp: {
            const CMatrix chi = random_gram(n, n, rng);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            CMatrix s = chi;
            RealVector x(n);
            for (double& xi : x) xi = unit(rng);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) s(i, j) *= x[i] * x[j];
            return s;
        }
        case SamplerKind::near_counterexample: {
            if (n != 16) throw DomainError("near_counterexample sampler requires n = 16");
            const CMatrix m = factor_matrix(published_counterexample());
            CMatrix e = complex_gaussian(2, 16, rng);
            e *= sampler.epsilon * m.frobenius_norm() / e.frobenius_norm();
            const CMatrix mp = m + e;
            return mp.adjoint() * mp;
        }
    }
    throw DomainError("draw_sample: unknown sampler");
}

SearchReport conjecture_search(std::size_t n, std::size_t trials, const SamplerSpec& sampler, std::uint64_t seed) {
    if (n < 2 || n > kMaxFMatrixDim) throw DomainError("conjecture_search: need 2 <= n <= 18");
    if (trials < 1) throw DomainError("conjecture_search: trials must be >= 1");

    struct Outcome {
        double relative = 0.0;
        double margin = 0.0;
        bool anomalous = false;
    };
    std::vector<Outcome> outcomes(trials);
    parallel_for(trials, [&](std::size_t t) {
        const AnomalyReport r = anomaly_criterion(draw_sample(sampler, n, trial_seed(seed, t)));
        outcomes[t] = {r.criterion_margin / r.perm_g, r.criterion_margin, r.anomalous};
    });

    SearchReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    rep.sampler = sampler.to_string();
    rep.histogram.assign(kHistogramBins + 1, 0);
    for (std::size_t t = 0; t < trials; ++t) {
        const Outcome& o = outcomes[t];
        if (t == 0 || o.relative > outcomes[rep.argmax_trial].relative) rep.argmax_trial = t;
        if (o.anomalous) ++rep.positive_count;
        const double decade = o.relative > 0.0 ? std::floor(std::log10(o.relative)) + static_cast<double>(kHistogramBins) : 0.0;
        ++rep.histogram[static_cast<std::size_t>(std::clamp(decade, 0.0, static_cast<double>(kHistogramBins)))];
    }
    rep.max_relative_margin = outcomes[rep.argmax_trial].relative;
    rep.max_margin = outcomes[rep.argmax_trial].margin;
    rep.argmax = draw_sample(sampler, n, trial_seed(seed, rep.argmax_trial));
    return rep;
}

}  // namespace bunchlab
