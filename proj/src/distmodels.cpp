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

#include "bunchlab/distmodels.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "bunchlab/errors.hpp"

namespace bunchlab {

namespace {

constexpr double kGramTol = 1e-10;
constexpr double kPhaseTol = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_unit_interval(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(who) + ": parameter " + std::to_string(x) + " not in [0, 1]");
}

CMatrix xi_matrix(const RealVector& x) {
    const std::size_t n = x.size();
    if (n == 0) throw DomainError("xi_model: empty parameter vector");
    for (double xi : x) check_unit_interval(xi, "xi_model");
    CMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = i == j ? 1.0 : x[i] * x[j];
    return s;
}

CMatrix compile_unchecked(const GramSpec& spec);

CMatrix compile_unchecked(const GramSpec& spec) {
    return std::visit(
        overloaded{
            [](const gram::AllOnes& m) {
                if (m.n == 0) throw DomainError("all_ones: n must be >= 1");
                return CMatrix::ones(m.n, m.n);
            },
            [](const gram::Identity& m) {
                if (m.n == 0) throw DomainError("identity: n must be >= 1");
                return CMatrix::identity(m.n);
            },
            [](const gram::XModel& m) {
                if (m.n == 0) throw DomainError("x_model: n must be >= 1");
                check_unit_interval(m.x, "x_model");
                CMatrix s(m.n, m.n);
                for (std::size_t i = 0; i < m.n; ++i)
                    for (std::size_t j = 0; j < m.n; ++j) s(i, j) = i == j ? 1.0 : m.x * m.x;
                return s;
            },
            [](const gram::XiModel& m) { return xi_matrix(m.x); },
            [](const gram::Interpolated& m) {
                CMatrix base = std::visit(overloaded{[](const std::shared_ptr<const GramSpec>& b) {
                                                         if (!b) throw DomainError("interpolated: null base");
                                                         return compile_gram(*b);
                                                     },
                                                     [](const CMatrix& b) {
                                                         validate_gram(b, "interpolated base");
                                                         return b;
                                                     }},
                                          m.base);
                const CMatrix sx = xi_matrix(m.x);
                if (sx.rows() != base.rows()) throw DimensionError("interpolated: base and x-vector dimensions differ");
                return hadamard(base, sx);
            },
            [](const gram::TwoSet& m) {
                if (m.n == 0 || m.k > m.n) throw DomainError("two_set: need 0 <= k <= n, n >= 1");
                check_unit_interval(m.x, "two_set");
                CMatrix s(m.n, m.n);
                for (std::size_t i = 0; i < m.n; ++i)
                    for (std::size_t j = 0; j < m.n; ++j) s(i, j) = ((i < m.k) == (j < m.k)) ? 1.0 : m.x;
                return s;
            },
            [](const gram::DirectSum& m) {
                if (m.blocks.empty()) throw DomainError("direct_sum: no blocks");
                std::vector<CMatrix> blocks;
                std::size_t n = 0;
                for (const auto& b : m.blocks) {
                    blocks.push_back(compile_gram(b));
                    n += blocks.back().rows();
                }
                CMatrix s(n, n);
                std::size_t off = 0;
                for (const auto& b : blocks) {
                    for (std::size_t i = 0; i < b.rows(); ++i)
                        for (std::size_t j = 0; j < b.cols(); ++j) s(off + i, off + j) = b(i, j);
                    off += b.rows();
                }
                return s;
            },
            [](const gram::TimeDelay& m) { return compile_time_delay(m.profile); },
            [](const gram::Explicit& m) { return m.s; },
        },
        spec.model);
}

}  // namespace

DelayProfile DelayProfile::from_arrival_times(const RealVector& t, double sigma) {
    if (t.empty()) throw DomainError("DelayProfile: empty arrival-time vector");
    if (!(sigma > 0.0)) throw DomainError("DelayProfile: sigma must be positive");
    double norm = 0.0;
    for (double x : t) norm += x * x;
    norm = std::sqrt(norm);
    DelayProfile p;
    p.sigma = sigma;
    p.tau.assign(t.size(), 0.0);
    if (norm == 0.0) {
        p.tau[0] = 1.0;
        p.d = 0.0;
        return p;
    }
    for (std::size_t i = 0; i < t.size(); ++i) p.tau[i] = t[i] / norm;
    p.d = norm / (2.0 * sigma);
    return p;
}

void DelayProfile::validate() const {
    if (tau.empty()) throw DomainError("DelayProfile: empty tau");
    double norm = 0.0;
    for (double x : tau) {
        if (!std::isfinite(x)) throw DomainError("DelayProfile: non-finite tau");
        norm += x * x;
    }
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-12) throw DomainError("DelayProfile: tau must have unit norm");
    if (!(d >= 0.0) || !std::isfinite(d)) throw DomainError("DelayProfile: d must be finite and nonnegative");
    if (!(sigma > 0.0)) throw DomainError("DelayProfile: sigma must be positive");
}

GramSpec GramSpec::interpolated(GramSpec base, RealVector x) {
    return {gram::Interpolated{std::make_shared<const GramSpec>(std::move(base)), std::move(x)}};
}

GramSpec GramSpec::interpolated(CMatrix base, RealVector x) {
    return {gram::Interpolated{std::move(base), std::move(x)}};
}

std::string_view GramSpec::kind() const {
    return std::visit(overloaded{
                          [](const gram::AllOnes&) { return std::string_view("all_ones"); },
                          [](const gram::Identity&) { return std::string_view("identity"); },
                          [](const gram::XModel&) { return std::string_view("x_model"); },
                          [](const gram::XiModel&) { return std::string_view("xi_model"); },
                          [](const gram::Interpolated&) { return std::string_view("interpolated"); },
                          [](const gram::TwoSet&) { return std::string_view("two_set"); },
                          [](const gram::DirectSum&) { return std::string_view("direct_sum"); },
                          [](const gram::TimeDelay&) { return std::string_view("time_delay"); },
                          [](const gram::Explicit&) { return std::string_view("explicit"); },
                      },
                      model);
}

std::size_t GramSpec::dimension() const {
    return std::visit(overloaded{
                          [](const gram::AllOnes& m) { return m.n; },
                          [](const gram::Identity& m) { return m.n; },
                          [](const gram::XModel& m) { return m.n; },
                          [](const gram::XiModel& m) { return m.x.size(); },
                          [](const gram::Interpolated& m) { return m.x.size(); },
                          [](const gram::TwoSet& m) { return m.n; },
                          [](const gram::DirectSum& m) {
                              std::size_t n = 0;
                              for (const auto& b : m.blocks) n += b.dimension();
                              return n;
                          },
                          [](const gram::TimeDelay& m) { return m.profile.tau.size(); },
                          [](const gram::Explicit& m) { return m.s.rows(); },
                      },
                      model);
}

void validate_gram(const CMatrix& s, std::string_view who) {
    if (!s.is_square() || s.rows() == 0) throw DimensionError(std::string(who) + ": Gram matrix must be square");
    if (!s.all_finite()) throw DomainError(std::string(who) + ": non-finite entry");
    for (std::size_t i = 0; i < s.rows(); ++i) {
        if (std::abs(s(i, i) - 1.0) > kGramTol) throw DomainError(std::string(who) + ": diagonal entries must be 1");
    }
    const HermitianCheckReport rep = check_psd_hermitian(s, kGramTol);
    if (!rep.is_hermitian) throw DomainError(std::string(who) + ": matrix is not Hermitian");
    if (!rep.is_psd) {
        throw DomainError(std::string(who) + ": matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(rep.min_eigenvalue) + ")");
    }
}

CMatrix compile_gram(const GramSpec& spec) {
    CMatrix s = compile_unchecked(spec);
    validate_gram(s, std::string("compile_gram(") + std::string(spec.kind()) + ")");
    return s;
}

CMatrix compile_time_delay(const DelayProfile& profile) {
    profile.validate();
    const std::size_t n = profile.tau.size();
    const double d2 = profile.d * profile.d;
    CMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double diff = profile.tau[i] - profile.tau[j];
            s(i, j) = std::exp(-diff * diff * d2);
        }
    return s;
}

CMatrix gauge_transform(const CMatrix& s, const RealVector& thetas) {
    if (!s.is_square()) throw DimensionError("gauge_transform: matrix must be square");
    if (thetas.size() != s.rows()) throw DimensionError("gauge_transform: thetas length must equal n");
    CMatrix out = s;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) out(i, j) *= std::polar(1.0, thetas[j] - thetas[i]);
    return out;
}

NonnegClassResult nonneg_class_test(const CMatrix& h, double tol) {
    if (!h.is_square() || h.rows() == 0) throw DimensionError("nonneg_class_test: matrix must be square");
    const std::size_t n = h.rows();
    if (tol < 0.0) tol = 1e-12 * h.max_abs();
    auto edge = [&](std::size_t i, std::size_t j) { return std::abs(h(i, j)) > tol; };

    // theta_j - theta_i = -arg(h_ij) along every nonzero entry.
    RealVector theta(n, 0.0);
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        std::queue<std::size_t> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            const std::size_t i = frontier.front();
            frontier.pop();
            for (std::size_t j = 0; j < n; ++j) {
                if (seen[j] || !edge(i, j)) continue;
                seen[j] = true;
                theta[j] = theta[i] - std::arg(h(i, j));
                frontier.push(j);
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!edge(i, j)) continue;
            const double phase = std::arg(h(i, j) * std::polar(1.0, theta[j] - theta[i]));
            if (std::abs(phase) > kPhaseTol) return {false, std::nullopt};
        }
    }
    return {true, theta};
}

}  // namespace bunchlab
