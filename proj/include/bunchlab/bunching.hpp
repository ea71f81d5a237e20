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

#ifndef BUNCHLAB_BUNCHING_HPP
#define BUNCHLAB_BUNCHING_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "bunchlab/cmatrix.hpp"
#include "bunchlab/distmodels.hpp"
#include "bunchlab/interferometer.hpp"
#include "bunchlab/permanent.hpp"

namespace bunchlab {

/// Relative Ryser/Glynn spread above which a bunching probability is rejected.
inline constexpr double kEngineAgreementTol = 1e-7;

struct BunchingResult {
    double probability = 0.0;  ///< Re perm(H (.) S), clamped to [0, 1]
    cplx permanent{};          ///< unclamped Ryser value
    CMatrix h_used;
    CMatrix s_used;
    double engine_agreement = 0.0;
};

/// Throws DomainError unless h is PSD Hermitian with spectrum in [0, 1] (1e-10).
void validate_h_matrix(const CMatrix& h);

/// P_kappa = perm(H (.) S), evaluated with both Ryser and Glynn.
BunchingResult bunching_prob(const CMatrix& h, const CMatrix& s);

struct SingleModeBunching {
    double prob = 0.0;
    double classical = 0.0;  ///< prod_i |U_ki|^2
    double perm_s = 0.0;
};

/// All photons in output mode k: classical * perm(S). Cross-checked against
/// bunching_prob with kappa = {k} to 1e-10 relative.
SingleModeBunching single_mode_bunching(const InterferometerScene& scene, const CMatrix& s, std::size_t k);

// ---------------------------------------------------------------------------
// Mixed internal states
// ---------------------------------------------------------------------------

enum class EnsembleKind { uniform, shared_basis, rank_two, general_product };

std::string_view ensemble_kind_name(EnsembleKind kind);

struct EnsembleComponent {
    double weight = 0.0;
    CMatrix s;
};

inline constexpr std::size_t kMaxEnsembleTerms = std::size_t{1} << 20;

/// Convex combination of pure product states, each described by its Gram matrix.
struct MixedEnsemble {
    EnsembleKind kind = EnsembleKind::general_product;
    std::vector<EnsembleComponent> components;

    /// rho^{(x)n} with rho = sum_k alphas[k] |k><k|.
    static MixedEnsemble uniform(std::size_t n, const RealVector& alphas);
    /// Photon i has spectrum per_photon[i] in a common orthonormal basis.
    static MixedEnsemble shared_basis(const std::vector<RealVector>& per_photon);
    /// Photon i is |phi_1> with probability alphas[i], else |phi_2>; <phi_1|phi_2> = x.
    static MixedEnsemble rank_two(const RealVector& alphas, double x);
    static MixedEnsemble general(std::vector<EnsembleComponent> components);

    /// Weights >= 0 summing to 1 (1e-12), all components valid Grams of equal size.
    void validate() const;
};

/// P_kappa = sum_j w_j perm(H (.) S^j). s_used holds the weighted mean Gram.
BunchingResult bunching_prob_mixed(const CMatrix& h, const MixedEnsemble& ensemble);

// ---------------------------------------------------------------------------
// Derivatives
// ---------------------------------------------------------------------------

/// One-parameter matrix family G(x) with its entrywise derivative.
struct MatrixFamily {
    std::function<CMatrix(double)> value;
    std::function<CMatrix(double)> derivative;
};

/// sum_ij dG_ij perm(G(i;j)).
cplx perm_derivative_generic(const CMatrix& g, const CMatrix& dg);

/// Central difference with one Richardson step (h, h/2).
cplx perm_derivative_fd(const MatrixFamily& family, double x, double step = 1e-5);

/// Generic derivative of perm(G(x)), checked against perm_derivative_fd.
/// Disagreement beyond 1e-6 |d| + 1e-10 |perm G(x)| raises PrecisionError.
double perm_derivative(const MatrixFamily& family, double x);

/// G(d) = H (.) S^tau(d) with dG_ij/dd = -2 (tau_i - tau_j)^2 d G_ij.
MatrixFamily time_delay_family(const CMatrix& h, const RealVector& tau);
/// G(x) = H (.) S^x, the uniform x-model.
MatrixFamily x_model_family(const CMatrix& h);
/// G(x) = H (.) S^x with only x_index varying; the other parameters are fixed.
MatrixFamily xi_model_family(const CMatrix& h, const RealVector& x, std::size_t x_index);
/// G(x) = H (.) S(x) for the two-set block model with the first k photons grouped.
MatrixFamily two_set_family(const CMatrix& h, std::size_t k);

struct DelayDerivative {
    double first = 0.0;           ///< d perm(G(d)) / dd at profile.d
    double second_at_zero = 0.0;  ///< d^2 perm(G(d)) / dd^2 at d = 0
};

/// first = 4d (tau^T F^G tau - perm G), second_at_zero = 4 (tau^T F^H tau - perm H).
DelayDerivative delay_derivative(const CMatrix& h, const DelayProfile& profile);

// ---------------------------------------------------------------------------
// Anomaly criterion and scans
// ---------------------------------------------------------------------------

struct AnomalyReport {
    double perm_g = 0.0;
    double lambda_max_r = 0.0;
    RealVector tau_max;
    double criterion_margin = 0.0;  ///< lambda_max_r - perm_g
    bool anomalous = false;         ///< margin > 1e-9 perm_g
    double laplace_residual = 0.0;
};

/// Largest eigenvalue of Sym(Re F^g) against perm(g). g PSD Hermitian, 2 <= n <= 18.
AnomalyReport anomaly_criterion(const CMatrix& g);

struct ScanGrid {
    double start = 0.0;
    double stop = 2.0;
    double step = 0.001;
};

struct ScanPoint {
    double d = 0.0;
    double ratio = 0.0;
    double perm_hs = 0.0;
    double perm_h = 0.0;
};

struct ViolationScan {
    std::vector<ScanPoint> table;
    double perm_h = 0.0;
    double d_max = 0.0;   ///< golden-section refined argmax of R
    double r_max = 0.0;
    double perm_hs_at_max = 0.0;
    double quadratic_coefficient = 0.0;  ///< c in R ~ 1 + c d^2, fitted on 11 points in [0, 0.05]
};

/// R(d) = perm(H (.) S^tau(d)) / perm(H) over the grid, then refinement of the
/// maximum to 1e-6 in d and the small-d quadratic fit.
ViolationScan violation_scan(const CMatrix& h, const RealVector& tau, const ScanGrid& grid = {});

enum class MonotoneModel { x_model, xi_model, two_set };

std::string_view monotone_model_name(MonotoneModel model);

struct MonotonicityReport {
    MonotoneModel model = MonotoneModel::x_model;
    std::size_t evaluations = 0;
    double min_derivative = 0.0;  ///< smallest derivative seen, relative to perm(h)
    std::size_t violations = 0;   ///< derivatives below -1e-9 perm(h)
};

/// Samples random parameter points in [0, 1] and evaluates the derivative of
/// perm(H (.) S) along the model parameter(s). For two_set, `k` is the size of
/// the first group; for xi_model every coordinate derivative is evaluated.
MonotonicityReport monotonicity_check(MonotoneModel model, const CMatrix& h, std::size_t samples, std::uint64_t seed,
                                      std::size_t k = 1);

}  // namespace bunchlab

#endif  // BUNCHLAB_BUNCHING_HPP
