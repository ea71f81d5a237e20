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

#include "bunchlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bunchlab/errors.hpp"
#include "bunchlab/interferometer.hpp"

namespace bunchlab {

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

// Digit of photon p in a photon-major index.
std::size_t slot_digit(std::size_t index, std::size_t p, std::size_t n, std::size_t d) {
    return (index / ipow(d, n - 1 - p)) % d;
}

}  // namespace

double FirstQuantState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

FirstQuantState build_symmetrized_input(std::size_t m, std::span<const ComplexVector> internal_states) {
    const std::size_t n = internal_states.size();
    if (n == 0) throw DimensionError("build_symmetrized_input: no photons");
    if (n > kOracleMaxPhotons) throw SizeError("oracle: at most 3 photons");
    if (m > kOracleMaxModes) throw SizeError("oracle: at most 4 modes");
    if (n > m) throw DimensionError("oracle: more photons than modes");
    const std::size_t L = internal_states.front().size();
    if (L == 0) throw DimensionError("oracle: empty internal state");
    if (L > kOracleMaxInternal) throw SizeError("oracle: internal dimension at most 3");
    for (const auto& phi : internal_states) {
        if (phi.size() != L) throw DimensionError("oracle: internal states differ in dimension");
        double nrm = 0.0;
        for (const auto& z : phi) nrm += std::norm(z);
        if (std::abs(std::sqrt(nrm) - 1.0) > 1e-10) throw DomainError("oracle: internal state is not unit norm");
    }

    FirstQuantState st{n, m, L, ComplexVector(ipow(m * L, n))};
    const std::size_t d = m * L;
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::size_t terms = 0;
    do {
        ++terms;
        // Expand the product state slot by slot.
        ComplexVector prod{cplx{1.0, 0.0}};
        for (std::size_t slot = 0; slot < n; ++slot) {
            const std::size_t mode = sigma[slot];
            const ComplexVector& phi = internal_states[sigma[slot]];
            ComplexVector next(prod.size() * d);
            for (std::size_t a = 0; a < prod.size(); ++a)
                for (std::size_t k = 0; k < L; ++k) next[a * d + mode * L + k] = prod[a] * phi[k];
            prod = std::move(next);
        }
        for (std::size_t i = 0; i < prod.size(); ++i) st.amplitudes[i] += prod[i];
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    const double scale = 1.0 / std::sqrt(static_cast<double>(terms));
    for (auto& a : st.amplitudes) a *= scale;
    if (std::abs(st.norm() - 1.0) > 1e-10) throw PrecisionError("build_symmetrized_input: state is not normalized");
    return st;
}

FirstQuantState apply_interferometer(const FirstQuantState& state, const CMatrix& u) {
    if (!u.is_square() || u.rows() != state.m) throw DimensionError("apply_interferometer: unitary size differs from mode count");
    if (unitarity_residual(u) > kUnitaryTol) throw DomainError("apply_interferometer: matrix is not unitary");
    const std::size_t d = state.local_dimension();
    const std::size_t L = state.L;
    FirstQuantState cur = state;
    for (std::size_t p = 0; p < state.n; ++p) {
        const std::size_t stride = ipow(d, state.n - 1 - p);
        ComplexVector next(cur.amplitudes.size());
        for (std::size_t idx = 0; idx < cur.amplitudes.size(); ++idx) {
            const cplx amp = cur.amplitudes[idx];
            if (amp == cplx{}) continue;
            const std::size_t local = slot_digit(idx, p, state.n, d);
            const std::size_t mode = local / L;
            const std::size_t internal = local % L;
            const std::size_t base = idx - local * stride;
            for (std::size_t k = 0; k < state.m; ++k) next[base + (k * L + internal) * stride] += u(k, mode) * amp;
        }
        cur.amplitudes = std::move(next);
    }
    return cur;
}

double project_probability(const FirstQuantState& state, std::span<const std::size_t> kappa) {
    std::vector<bool> in(state.m, false);
    for (std::size_t k : kappa) {
        if (k >= state.m) throw IndexError("project_probability: mode " + std::to_string(k) + " out of range");
        in[k] = true;
    }
    const std::size_t d = state.local_dimension();
    double p = 0.0;
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        bool keep = true;
        for (std::size_t s = 0; s < state.n && keep; ++s) keep = in[slot_digit(idx, s, state.n, d) / state.L];
        if (keep) p += std::norm(state.amplitudes[idx]);
    }
    return p;
}

FirstQuantState permute_photons(const FirstQuantState& state, std::span<const std::size_t> perm) {
    if (perm.size() != state.n) throw DimensionError("permute_photons: permutation length differs from n");
    std::vector<bool> seen(state.n, false);
    for (std::size_t q : perm) {
        if (q >= state.n || seen[q]) throw DomainError("permute_photons: not a permutation");
        seen[q] = true;
    }
    const std::size_t d = state.local_dimension();
    FirstQuantState out = state;
    for (std::size_t idx = 0; idx < state.amplitudes.size(); ++idx) {
        std::size_t target = 0;
        for (std::size_t p = 0; p < state.n; ++p) target = target * d + slot_digit(idx, perm[p], state.n, d);
        out.amplitudes[target] = state.amplitudes[idx];
    }
    return out;
}

double simulate_bunching(const CMatrix& u, std::span<const ComplexVector> internal_states,
                         std::span<const std::size_t> kappa) {
    const FirstQuantState in = build_symmetrized_input(u.rows(), internal_states);
    return project_probability(apply_interferometer(in, u), kappa);
}

}  // namespace bunchlab
