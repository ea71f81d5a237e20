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

#ifndef BUNCHLAB_INTERFEROMETER_HPP
#define BUNCHLAB_INTERFEROMETER_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bunchlab/cmatrix.hpp"

namespace bunchlab {

inline constexpr double kUnitaryTol = 1e-10;

/// max |U^dagger U - 1| entry.
double unitarity_residual(const CMatrix& u);

/// An m-mode unitary with n photons entering modes 0..n-1 and a bunching
/// subset kappa of output modes (0-based, sorted, nonempty, not all modes).
struct InterferometerScene {
    CMatrix u;
    std::size_t n = 0;
    std::vector<std::size_t> kappa;

    std::size_t modes() const { return u.rows(); }
    /// Throws DomainError if u is not unitary to 1e-10 or n/kappa are invalid.
    void validate() const;
};

/// H_ij = sum_{k in kappa} conj(U_ki) U_kj for i, j < n. Validates the scene.
CMatrix h_matrix(const InterferometerScene& scene);

/// Same formula with no restriction on kappa (used for the complement identity).
CMatrix h_matrix_for_modes(const CMatrix& u, std::size_t n, const std::vector<std::size_t>& kappa);

struct RowEmbedding {
    InterferometerScene scene;
    double gamma = 0.0;
    CMatrix completion;  ///< r x r block B with B B^dagger = 1 - gamma M M^dagger
};

/// Embeds sqrt(gamma) * M (r x c, r <= c, full row rank) as the upper-left block
/// of a (c + r)-mode unitary, gamma = 1 / sigma_max(M)^2. The first r rows are
/// [sqrt(gamma) M | B]; the rest come from Gram-Schmidt over e_1, e_2, ...
/// The returned scene has n = c photons and kappa = {0, ..., r-1}.
RowEmbedding embed_rows(const CMatrix& m_block);

/// Haar-random m x m unitary: Gram-Schmidt QR of a complex Gaussian matrix
/// with the R-diagonal phases divided out. Deterministic per seed.
CMatrix haar_unitary(std::size_t m, std::uint64_t seed);

/// Two-mode element [[e^{i phi} cos t, -sin t], [e^{i phi} sin t, cos t]] on
/// neighbouring modes (mode_a, mode_b = mode_a + 1).
struct BeamSplitter {
    std::size_t mode_a = 0;
    std::size_t mode_b = 1;
    double theta = 0.0;
    double phi = 0.0;
};

CMatrix beam_splitter_matrix(double theta, double phi);

/// u = diag(e^{i phases}) * T_N * ... * T_1 where elements = [T_1, ..., T_N].
struct BsNetwork {
    std::size_t m = 0;
    std::vector<BeamSplitter> elements;
    RealVector phases;
};

/// Triangular Reck mesh. For rows r = m-1 down to 1, entries (r, 0) ... (r, r-1)
/// are zeroed in turn by column rotations on modes (j, j+1). Already-zero entries produce no
/// element, so at most m(m-1)/2 elements. Non-unitary input raises DomainError.
BsNetwork reck_decompose(const CMatrix& u);

CMatrix reconstruct(const BsNetwork& net);

/// Cascade: n photons into u1 (m1 modes); output out_mode of u1 feeds input 0
/// of u2 (m2 modes), the other inputs of u2 are fresh vacuum modes. kappa is
/// the m2 outputs of u2, which makes H rank one. n = 0 selects n = m1.
InterferometerScene cascade_rank_one(const CMatrix& u1, std::size_t out_mode, const CMatrix& u2, std::size_t n = 0);

}  // namespace bunchlab

#endif  // BUNCHLAB_INTERFEROMETER_HPP
