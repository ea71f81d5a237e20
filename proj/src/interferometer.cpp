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

#include "bunchlab/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "bunchlab/errors.hpp"

namespace bunchlab {

namespace {

void require_unitary(const CMatrix& u, const char* who) {
    if (!u.is_square() || u.rows() == 0) throw DimensionError(std::string(who) + ": unitary must be square");
    const double res = unitarity_residual(u);
    if (!(res <= kUnitaryTol)) {
        throw DomainError(std::string(who) + ": matrix is not unitary (residual " + std::to_string(res) + ")");
    }
}

// Right-multiplies columns (a, b) of x by the 2x2 matrix q.
void mix_columns(CMatrix& x, std::size_t a, std::size_t b, const CMatrix& q) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const cplx xa = x(r, a);
        const cplx xb = x(r, b);
        x(r, a) = xa * q(0, 0) + xb * q(1, 0);
        x(r, b) = xa * q(0, 1) + xb * q(1, 1);
    }
}

// Projects v against every row in `rows` (twice, for stability); returns the residual norm.
double orthogonalize(ComplexVector& v, const std::vector<ComplexVector>& rows) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& row : rows) {
            cplx dot{};
            for (std::size_t l = 0; l < v.size(); ++l) dot += std::conj(row[l]) * v[l];
            for (std::size_t l = 0; l < v.size(); ++l) v[l] -= dot * row[l];
        }
    }
    double nrm = 0.0;
    for (const auto& z : v) nrm += std::norm(z);
    return std::sqrt(nrm);
}

}  // namespace

double unitarity_residual(const CMatrix& u) {
    if (!u.is_square()) throw DimensionError("unitarity_residual: matrix must be square");
    return max_abs_diff(u.adjoint() * u, CMatrix::identity(u.rows()));
}

void InterferometerScene::validate() const {
    require_unitary(u, "InterferometerScene");
    const std::size_t m = u.rows();
    if (n < 1 || n > m) throw DomainError("InterferometerScene: need 1 <= n <= m");
    if (kappa.empty() || kappa.size() >= m) throw DomainError("InterferometerScene: kappa must be a nontrivial subset");
    for (std::size_t k = 0; k < kappa.size(); ++k) {
        if (kappa[k] >= m) throw DomainError("InterferometerScene: kappa index out of range");
        if (k > 0 && kappa[k] <= kappa[k - 1]) throw DomainError("InterferometerScene: kappa must be sorted and unique");
    }
}

CMatrix h_matrix_for_modes(const CMatrix& u, std::size_t n, const std::vector<std::size_t>& kappa) {
    if (n > u.cols()) throw DimensionError("h_matrix: more photons than input modes");
    CMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{};
            for (std::size_t k : kappa) {
                if (k >= u.rows()) throw IndexError("h_matrix: output mode out of range");
                s += std::conj(u(k, i)) * u(k, j);
            }
            h(i, j) = s;
        }
    return h;
}

CMatrix h_matrix(const InterferometerScene& scene) {
    scene.validate();
    return h_matrix_for_modes(scene.u, scene.n, scene.kappa);
}

RowEmbedding embed_rows(const CMatrix& m_block) {
    const std::size_t r = m_block.rows();
    const std::size_t c = m_block.cols();
    if (r == 0 || c == 0 || r > c) throw DimensionError("embed_rows: block must be r x c with 1 <= r <= c");
    if (!m_block.all_finite()) throw DomainError("embed_rows: non-finite entry");

    const CMatrix mm = m_block * m_block.adjoint();
    const RealVector ev = hermitian_eigenvalues(mm);
    if (!(ev.back() > 0.0) || ev.front() <= 1e-12 * ev.back()) {
        throw DomainError("embed_rows: block is rank deficient");
    }
    const double gamma = 1.0 / ev.back();
    const double root = std::sqrt(gamma);

    CMatrix deficit = CMatrix::identity(r) - gamma * mm;
    const CMatrix b = psd_sqrt(0.5 * (deficit + deficit.adjoint()));

    const std::size_t m = r + c;
    std::vector<ComplexVector> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < r; ++i) {
        ComplexVector row(m);
        for (std::size_t j = 0; j < c; ++j) row[j] = root * m_block(i, j);
        for (std::size_t j = 0; j < r; ++j) row[c + j] = b(i, j);
        rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < m && rows.size() < m; ++k) {
        ComplexVector v(m);
        v[k] = 1.0;
        const double nrm = orthogonalize(v, rows);
        if (nrm < 1e-8) continue;
        for (auto& z : v) z /= nrm;
        rows.push_back(std::move(v));
    }
    if (rows.size() != m) throw DomainError("embed_rows: row completion failed");

    CMatrix u(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) u(i, j) = rows[i][j];
    if (unitarity_residual(u) > kUnitaryTol) throw PrecisionError("embed_rows: completed matrix is not unitary");

    RowEmbedding out;
    out.gamma = gamma;
    out.completion = b;
    out.scene.u = std::move(u);
    out.scene.n = c;
    out.scene.kappa.resize(r);
    for (std::size_t i = 0; i < r; ++i) out.scene.kappa[i] = i;
    return out;
}

CMatrix haar_unitary(std::size_t m, std::uint64_t seed) {
    if (m == 0) throw DomainError("haar_unitary: m must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<ComplexVector> cols(m, ComplexVector(m));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            cols[j][i] = {re, im};
        }
    // Modified Gram-Schmidt; R_jj = norm of the residual column.
    std::vector<ComplexVector> q;
    std::vector<cplx> r_diag;
    for (std::size_t j = 0; j < m; ++j) {
        ComplexVector v = cols[j];
        const double nrm = orthogonalize(v, q);
        if (nrm == 0.0) throw DomainError("haar_unitary: degenerate Gaussian sample");
        for (auto& z : v) z /= nrm;
        q.push_back(std::move(v));
        r_diag.emplace_back(nrm, 0.0);
    }
    CMatrix u(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        const cplx phase = r_diag[j] / std::abs(r_diag[j]);
        for (std::size_t i = 0; i < m; ++i) u(i, j) = q[j][i] * phase;
    }
    return u;
}

CMatrix beam_splitter_matrix(double theta, double phi) {
    const cplx e = std::polar(1.0, phi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return CMatrix::from_rows({{e * c, -s}, {e * s, c}});
}

BsNetwork reck_decompose(const CMatrix& u) {
    require_unitary(u, "reck_decompose");
    const std::size_t m = u.rows();
    CMatrix work = u;
    BsNetwork net;
    net.m = m;
    for (std::size_t r = m; r-- > 1;) {
        for (std::size_t j = 0; j < r; ++j) {
            const cplx x = work(r, j);
            if (std::abs(x) <= 1e-14) {
                work(r, j) = 0.0;
                continue;
            }
            const cplx y = work(r, j + 1);
            const double phi = std::arg(x) - std::arg(y);
            const double theta = std::atan2(std::abs(x), std::abs(y));
            mix_columns(work, j, j + 1, beam_splitter_matrix(theta, phi).adjoint());
            work(r, j) = 0.0;
            net.elements.push_back({j, j + 1, theta, phi});
        }
    }
    net.phases.resize(m);
    for (std::size_t k = 0; k < m; ++k) net.phases[k] = std::arg(work(k, k));
    return net;
}

CMatrix reconstruct(const BsNetwork& net) {
    if (net.phases.size() != net.m) throw DimensionError("reconstruct: phase vector length != m");
    std::vector<cplx> d(net.m);
    for (std::size_t k = 0; k < net.m; ++k) d[k] = std::polar(1.0, net.phases[k]);
    CMatrix out = CMatrix::diagonal(d);
    for (auto it = net.elements.rbegin(); it != net.elements.rend(); ++it) {
        if (it->mode_a >= net.m || it->mode_b >= net.m || it->mode_a == it->mode_b) {
            throw IndexError("reconstruct: element mode out of range");
        }
        mix_columns(out, it->mode_a, it->mode_b, beam_splitter_matrix(it->theta, it->phi));
    }
    return out;
}

InterferometerScene cascade_rank_one(const CMatrix& u1, std::size_t out_mode, const CMatrix& u2, std::size_t n) {
    require_unitary(u1, "cascade_rank_one(u1)");
    require_unitary(u2, "cascade_rank_one(u2)");
    const std::size_t m1 = u1.rows();
    const std::size_t m2 = u2.rows();
    if (out_mode >= m1) throw IndexError("cascade_rank_one: out_mode out of range");
    const std::size_t m = m1 + m2 - 1;

    CMatrix first = CMatrix::identity(m);
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m1; ++j) first(i, j) = u1(i, j);

    std::vector<std::size_t> route{out_mode};
    for (std::size_t k = m1; k < m; ++k) route.push_back(k);
    CMatrix second = CMatrix::identity(m);
    for (std::size_t a = 0; a < m2; ++a)
        for (std::size_t b = 0; b < m2; ++b) second(route[a], route[b]) = u2(a, b);

    InterferometerScene scene;
    scene.u = second * first;
    scene.n = n == 0 ? m1 : n;
    scene.kappa = route;
    std::sort(scene.kappa.begin(), scene.kappa.end());
    scene.validate();
    return scene;
}

}  // namespace bunchlab
