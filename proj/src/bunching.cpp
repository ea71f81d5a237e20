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

#include "bunchlab/bunching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bunchlab/errors.hpp"
#include "bunchlab/parallel.hpp"

namespace bunchlab {

namespace {

double quadratic_form(const CMatrix& f, const RealVector& tau) {
    double q = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        for (std::size_t j = 0; j < tau.size(); ++j) q += tau[i] * tau[j] * f(i, j).real();
    return q;
}

void require_same_dim(const CMatrix& h, const CMatrix& s, const char* who) {
    if (!h.is_square() || !s.is_square() || h.rows() != s.rows()) {
        throw DimensionError(std::string(who) + ": H and S must be square of equal size");
    }
}

// Enumerates every tuple j in [0, L)^n (photon 0 most significant) and emits
// (weight, S^j) with S^j_ab = overlap(j_a, j_b).
template <typename WeightFn, typename OverlapFn>
std::vector<EnsembleComponent> enumerate_tuples(std::size_t n, std::size_t levels, WeightFn weight, OverlapFn overlap) {
    if (n == 0 || levels == 0) throw DomainError("MixedEnsemble: need n >= 1 and at least one level");
    double count = std::pow(static_cast<double>(levels), static_cast<double>(n));
    if (count > static_cast<double>(kMaxEnsembleTerms)) {
        throw SizeError("MixedEnsemble: " + std::to_string(static_cast<long double>(count)) + " terms exceed guard " +
                        std::to_string(kMaxEnsembleTerms));
    }
    std::vector<EnsembleComponent> out;
    std::vector<std::size_t> tuple(n, 0);
    for (;;) {
        const double w = weight(tuple);
        if (w > 0.0) {
            CMatrix s(n, n);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) s(a, b) = overlap(tuple[a], tuple[b]);
            out.push_back({w, std::move(s)});
        }
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++tuple[pos] < levels) break;
            tuple[pos] = 0;
            if (pos == 0) return out;
        }
    }
}

void check_distribution(const RealVector& alphas, const char* who) {
    double total = 0.0;
    for (double a : alphas) {
        if (!(a >= 0.0)) throw DomainError(std::string(who) + ": negative weight");
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError(std::string(who) + ": weights must sum to 1");
}

}  // namespace

void validate_h_matrix(const CMatrix& h) {
    if (!h.is_square() || h.rows() == 0) throw DimensionError("H matrix must be square");
    if (!h.all_finite()) throw DomainError("H matrix has non-finite entries");
    const HermitianCheckReport rep = check_psd_hermitian(h, kHermitianTol);
    if (!rep.is_hermitian) throw DomainError("H matrix is not Hermitian");
    if (!rep.is_psd || rep.min_eigenvalue < -1e-10) throw DomainError("H matrix is not positive semidefinite");
    if (rep.max_eigenvalue > 1.0 + 1e-10) throw DomainError("H matrix spectrum exceeds 1");
}

BunchingResult bunching_prob(const CMatrix& h, const CMatrix& s) {
    require_same_dim(h, s, "bunching_prob");
    validate_h_matrix(h);
    validate_gram(s, "bunching_prob(S)");
    const CMatrix g = hadamard(h, s);
    const PermanentValue ryser = perm_ryser(g);
    const PermanentValue glynn = perm_glynn(g);

    BunchingResult out;
    out.engine_agreement = relative_difference(ryser, glynn);
    if (out.engine_agreement > kEngineAgreementTol) {
        throw PrecisionError("bunching_prob: Ryser and Glynn disagree by " + std::to_string(out.engine_agreement) +
                             " relative");
    }
    out.permanent = ryser.to_complex();
    if (std::abs(out.permanent.imag()) > 1e-9 * std::abs(out.permanent.real()) + 1e-300) {
        throw PrecisionError("bunching_prob: permanent has a non-negligible imaginary part");
    }
    out.probability = std::clamp(out.permanent.real(), 0.0, 1.0);
    out.h_used = h;
    out.s_used = s;
    return out;
}

SingleModeBunching single_mode_bunching(const InterferometerScene& scene, const CMatrix& s, std::size_t k) {
    scene.validate();
    if (k >= scene.modes()) throw IndexError("single_mode_bunching: output mode out of range");
    if (s.rows() != scene.n) throw DimensionError("single_mode_bunching: S dimension must equal n");
    validate_gram(s, "single_mode_bunching(S)");

    SingleModeBunching out;
    out.classical = 1.0;
    for (std::size_t i = 0; i < scene.n; ++i) out.classical *= std::norm(scene.u(k, i));
    out.perm_s = perm_ryser(s).real();
    out.prob = out.classical * out.perm_s;

    const double cross = bunching_prob(h_matrix_for_modes(scene.u, scene.n, {k}), s).permanent.real();
    if (std::abs(cross - out.prob) > 1e-10 * std::max(std::abs(cross), std::abs(out.prob)) + 1e-300) {
        throw PrecisionError("single_mode_bunching: product formula disagrees with perm(H (.) S)");
    }
    return out;
}

std::string_view ensemble_kind_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::uniform: return "uniform";
        case EnsembleKind::shared_basis: return "shared_basis";
        case EnsembleKind::rank_two: return "rank_two";
        case EnsembleKind::general_product: return "general_product";
    }
    return "unknown";
}

MixedEnsemble MixedEnsemble::uniform(std::size_t n, const RealVector& alphas) {
    check_distribution(alphas, "MixedEnsemble::uniform");
    MixedEnsemble e;
    e.kind = EnsembleKind::uniform;
    e.components = enumerate_tuples(
        n, alphas.size(),
        [&](const std::vector<std::size_t>& j) {
            double w = 1.0;
            for (std::size_t idx : j) w *= alphas[idx];
            return w;
        },
        [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; });
    return e;
}

MixedEnsemble MixedEnsemble::shared_basis(const std::vector<RealVector>& per_photon) {
    if (per_photon.empty()) throw DomainError("MixedEnsemble::shared_basis: no photons");
    const std::size_t levels = per_photon.front().size();
    for (const auto& a : per_photon) {
        if (a.size() != levels) throw DimensionError("MixedEnsemble::shared_basis: spectra differ in length");
        check_distribution(a, "MixedEnsemble::shared_basis");
    }
    MixedEnsemble e;
    e.kind = EnsembleKind::shared_basis;
    e.components = enumerate_tuples(
        per_photon.size(), levels,
        [&](const std::vector<std::size_t>& j) {
            double w = 1.0;
            for (std::size_t i = 0; i < j.size(); ++i) w *= per_photon[i][j[i]];
            return w;
        },
        [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; });
    return e;
}

MixedEnsemble MixedEnsemble::rank_two(const RealVector& alphas, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("MixedEnsemble::rank_two: overlap must lie in [0, 1]");
    for (double a : alphas)
        if (!(a >= 0.0 && a <= 1.0)) throw DomainError("MixedEnsemble::rank_two: alpha must lie in [0, 1]");
    MixedEnsemble e;
    e.kind = EnsembleKind::rank_two;
    e.components = enumerate_tuples(
        alphas.size(), 2,
        [&](const std::vector<std::size_t>& j) {
            double w = 1.0;
            for (std::size_t i = 0; i < j.size(); ++i) w *= j[i] == 0 ? alphas[i] : 1.0 - alphas[i];
            return w;
        },
        [x](std::size_t a, std::size_t b) { return a == b ? 1.0 : x; });
    return e;
}

MixedEnsemble MixedEnsemble::general(std::vector<EnsembleComponent> components) {
    MixedEnsemble e;
    e.kind = EnsembleKind::general_product;
    e.components = std::move(components);
    e.validate();
    return e;
}

void MixedEnsemble::validate() const {
    if (components.empty()) throw DomainError("MixedEnsemble: no components");
    if (components.size() > kMaxEnsembleTerms) throw SizeError("MixedEnsemble: too many components");
    const std::size_t n = components.front().s.rows();
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.weight >= 0.0)) throw DomainError("MixedEnsemble: negative weight");
        if (c.s.rows() != n) throw DimensionError("MixedEnsemble: components differ in dimension");
        validate_gram(c.s, "MixedEnsemble component");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("MixedEnsemble: weights must sum to 1");
}

BunchingResult bunching_prob_mixed(const CMatrix& h, const MixedEnsemble& ensemble) {
    ensemble.validate();
    const std::size_t n = ensemble.components.front().s.rows();
    if (h.rows() != n) throw DimensionError("bunching_prob_mixed: H and ensemble dimensions differ");

    BunchingResult out;
    out.h_used = h;
    out.s_used = CMatrix(n, n);
    double total = 0.0;
    for (const auto& c : ensemble.components) {
        const BunchingResult term = bunching_prob(h, c.s);
        total += c.weight * term.permanent.real();
        out.engine_agreement = std::max(out.engine_agreement, term.engine_agreement);
        out.s_used += c.weight * c.s;
    }
    out.permanent = total;
    out.probability = std::clamp(total, 0.0, 1.0);
    return out;
}

cplx perm_derivative_generic(const CMatrix& g, const CMatrix& dg) {
    if (!g.is_square() || g.rows() != dg.rows() || g.cols() != dg.cols()) {
        throw DimensionError("perm_derivative: G and dG must be square of equal size");
    }
    if (g.rows() == 1) return dg(0, 0);
    const CMatrix minors = minor_permanents(g);
    cplx s{};
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) s += dg(i, j) * minors(i, j);
    return s;
}

cplx perm_derivative_fd(const MatrixFamily& family, double x, double step) {
    auto p = [&](double t) { return perm_ryser(family.value(t)).to_complex(); };
    auto central = [&](double h) { return (p(x + h) - p(x - h)) / (2.0 * h); };
    return (4.0 * central(step / 2.0) - central(step)) / 3.0;
}

double perm_derivative(const MatrixFamily& family, double x) {
    const CMatrix g = family.value(x);
    const cplx analytic = perm_derivative_generic(g, family.derivative(x));
    const cplx numeric = perm_derivative_fd(family, x);
    const double scale = std::abs(perm_ryser(g).to_complex());
    if (std::abs(analytic) > 1e-12 && std::abs(analytic - numeric) > 1e-6 * std::abs(analytic) + 1e-10 * scale) {
        throw PrecisionError("perm_derivative: analytic " + std::to_string(analytic.real()) +
                             " vs finite difference " + std::to_string(numeric.real()));
    }
    return analytic.real();
}

MatrixFamily time_delay_family(const CMatrix& h, const RealVector& tau) {
    if (h.rows() != tau.size()) throw DimensionError("time_delay_family: tau length must equal n");
    auto value = [h, tau](double d) {
        CMatrix g = h;
        for (std::size_t i = 0; i < tau.size(); ++i)
            for (std::size_t j = 0; j < tau.size(); ++j) {
                const double diff = tau[i] - tau[j];
                g(i, j) *= std::exp(-diff * diff * d * d);
            }
        return g;
    };
    auto derivative = [value, tau](double d) {
        CMatrix g = value(d);
        for (std::size_t i = 0; i < tau.size(); ++i)
            for (std::size_t j = 0; j < tau.size(); ++j) {
                const double diff = tau[i] - tau[j];
                g(i, j) *= -2.0 * diff * diff * d;
            }
        return g;
    };
    return {value, derivative};
}

MatrixFamily x_model_family(const CMatrix& h) {
    auto value = [h](double x) {
        CMatrix g = h;
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j)
                if (i != j) g(i, j) *= x * x;
        return g;
    };
    auto derivative = [h](double x) {
        CMatrix g(h.rows(), h.cols());
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j)
                if (i != j) g(i, j) = 2.0 * x * h(i, j);
        return g;
    };
    return {value, derivative};
}

MatrixFamily xi_model_family(const CMatrix& h, const RealVector& x, std::size_t x_index) {
    if (h.rows() != x.size()) throw DimensionError("xi_model_family: x length must equal n");
    if (x_index >= x.size()) throw IndexError("xi_model_family: parameter index out of range");
    auto params = [x, x_index](double t) {
        RealVector p = x;
        p[x_index] = t;
        return p;
    };
    auto value = [h, params](double t) {
        const RealVector p = params(t);
        CMatrix g = h;
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b)
                if (a != b) g(a, b) *= p[a] * p[b];
        return g;
    };
    auto derivative = [h, params, x_index](double t) {
        const RealVector p = params(t);
        CMatrix g(h.rows(), h.cols());
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < p.size(); ++b) {
                if (a == b) continue;
                double ds = 0.0;
                if (a == x_index) ds += p[b];
                if (b == x_index) ds += p[a];
                g(a, b) = ds * h(a, b);
            }
        return g;
    };
    return {value, derivative};
}

MatrixFamily two_set_family(const CMatrix& h, std::size_t k) {
    if (k > h.rows()) throw DomainError("two_set_family: k must not exceed n");
    auto crosses = [k](std::size_t a, std::size_t b) { return (a < k) != (b < k); };
    auto value = [h, crosses](double x) {
        CMatrix g = h;
        for (std::size_t a = 0; a < h.rows(); ++a)
            for (std::size_t b = 0; b < h.cols(); ++b)
                if (crosses(a, b)) g(a, b) *= x;
        return g;
    };
    auto derivative = [h, crosses](double) {
        CMatrix g(h.rows(), h.cols());
        for (std::size_t a = 0; a < h.rows(); ++a)
            for (std::size_t b = 0; b < h.cols(); ++b)
                if (crosses(a, b)) g(a, b) = h(a, b);
        return g;
    };
    return {value, derivative};
}

DelayDerivative delay_derivative(const CMatrix& h, const DelayProfile& profile) {
    profile.validate();
    if (h.rows() != profile.tau.size()) throw DimensionError("delay_derivative: tau length must equal n");
    const CMatrix g = hadamard(h, compile_time_delay(profile));
    const FMatrix fg = f_matrix(g);
    const FMatrix fh = profile.d == 0.0 ? fg : f_matrix(h);
    DelayDerivative out;
    out.first = 4.0 * profile.d * (quadratic_form(fg.entries, profile.tau) - fg.permanent.real());
    out.second_at_zero = 4.0 * (quadratic_form(fh.entries, profile.tau) - fh.permanent.real());
    return out;
}

AnomalyReport anomaly_criterion(const CMatrix& g) {
    if (!g.is_square() || g.rows() < 2 || g.rows() > kMaxFMatrixDim) {
        throw DimensionError("anomaly_criterion: need a square matrix with 2 <= n <= 18");
    }
    const HermitianCheckReport rep = check_psd_hermitian(g, kHermitianTol * std::max(1.0, g.max_abs()));
    if (!rep.is_psd) throw DomainError("anomaly_criterion: matrix is not PSD Hermitian");

    const FMatrix f = f_matrix(g);
    const SymEigMax top = sym_eig_max(f.entries);
    AnomalyReport out;
    out.perm_g = f.permanent.real();
    out.lambda_max_r = top.value;
    out.tau_max = top.vector;
    out.criterion_margin = out.lambda_max_r - out.perm_g;
    out.anomalous = out.criterion_margin > 1e-9 * std::abs(out.perm_g);
    out.laplace_residual = f.laplace_residual;
    return out;
}

ViolationScan violation_scan(const CMatrix& h, const RealVector& tau, const ScanGrid& grid) {
    if (!(grid.start >= 0.0) || !(grid.step > 0.0) || !(grid.stop >= grid.start)) {
        throw DomainError("violation_scan: grid must satisfy 0 <= start <= stop, step > 0");
    }
    DelayProfile probe{tau, 0.0, 1.0};
    probe.validate();
    if (h.rows() != tau.size()) throw DimensionError("violation_scan: tau length must equal n");

    const std::size_t n = h.rows();
    ViolationScan out;
    out.perm_h = bunching_prob(h, CMatrix::ones(n, n)).permanent.real();
    if (!(out.perm_h > 0.0)) throw DomainError("violation_scan: perm(H) must be positive");

    auto perm_at = [&](double d) {
        return bunching_prob(h, compile_time_delay(DelayProfile{tau, d, 1.0})).permanent.real();
    };

    const auto count = static_cast<std::size_t>(std::floor((grid.stop - grid.start) / grid.step + 0.5)) + 1;
    out.table.resize(count);
    parallel_for(count, [&](std::size_t k) {
        const double d = grid.start + static_cast<double>(k) * grid.step;
        const double p = perm_at(d);
        out.table[k] = {d, p / out.perm_h, p, out.perm_h};
    });

    std::size_t best = 0;
    for (std::size_t k = 1; k < count; ++k)
        if (out.table[k].ratio > out.table[best].ratio) best = k;

    // Golden-section search on [argmax - step, argmax + step].
    double lo = std::max(0.0, out.table[best].d - grid.step);
    double hi = out.table[best].d + grid.step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = perm_at(x1);
    double f2 = perm_at(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = perm_at(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = perm_at(x1);
        }
    }
    out.d_max = 0.5 * (lo + hi);
    out.perm_hs_at_max = perm_at(out.d_max);
    out.r_max = out.perm_hs_at_max / out.perm_h;

    // Least-squares R - 1 = c d^2 on 11 points of [0, 0.05].
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= 10; ++k) {
        const double d = 0.005 * k;
        const double d2 = d * d;
        num += d2 * (perm_at(d) / out.perm_h - 1.0);
        den += d2 * d2;
    }
    out.quadratic_coefficient = num / den;
    return out;
}

std::string_view monotone_model_name(MonotoneModel model) {
    switch (model) {
        case MonotoneModel::x_model: return "x_model";
        case MonotoneModel::xi_model: return "xi_model";
        case MonotoneModel::two_set: return "two_set";
    }
    return "unknown";
}

MonotonicityReport monotonicity_check(MonotoneModel model, const CMatrix& h, std::size_t samples, std::uint64_t seed,
                                      std::size_t k) {
    if (!h.is_square() || h.rows() == 0) throw DimensionError("monotonicity_check: H must be square");
    const double scale = std::abs(perm_ryser(h).to_complex());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    MonotonicityReport rep;
    rep.model = model;
    rep.min_derivative = std::numeric_limits<double>::infinity();
    auto record = [&](double deriv) {
        const double rel = scale > 0.0 ? deriv / scale : deriv;
        rep.min_derivative = std::min(rep.min_derivative, rel);
        if (rel < -1e-9) ++rep.violations;
        ++rep.evaluations;
    };
    for (std::size_t s = 0; s < samples; ++s) {
        switch (model) {
            case MonotoneModel::x_model: record(perm_derivative(x_model_family(h), unit(rng))); break;
            case MonotoneModel::two_set: record(perm_derivative(two_set_family(h, k), unit(rng))); break;
            case MonotoneModel::xi_model: {
                RealVector x(h.rows());
                for (double& xi : x) xi = unit(rng);
                for (std::size_t i = 0; i < x.size(); ++i) record(perm_derivative(xi_model_family(h, x, i), x[i]));
                break;
            }
        }
    }
    if (rep.evaluations == 0) rep.min_derivative = 0.0;
    return rep;
}

}  // namespace bunchlab
