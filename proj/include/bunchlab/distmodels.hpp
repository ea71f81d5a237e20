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

#ifndef BUNCHLAB_DISTMODELS_HPP
#define BUNCHLAB_DISTMODELS_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "bunchlab/cmatrix.hpp"

namespace bunchlab {

/// Temporal distinguishability: arrival-time direction tau (unit norm) and the
/// dimensionless delay strength d = ||t|| / (2 sigma). S depends only on tau, d.
struct DelayProfile {
    RealVector tau;
    double d = 0.0;
    double sigma = 1.0;

    /// Builds the profile from raw arrival times t and wave-packet width sigma.
    /// An all-zero t yields d = 0 and tau = e_1.
    static DelayProfile from_arrival_times(const RealVector& t, double sigma);
    /// Throws DomainError unless ||tau|| = 1 (1e-12), d >= 0 and sigma > 0.
    void validate() const;
};

struct GramSpec;

namespace gram {

struct AllOnes {
    std::size_t n = 0;
};
struct Identity {
    std::size_t n = 0;
};
/// Uniform overlap: S_ij = x^2 off the diagonal.
struct XModel {
    std::size_t n = 0;
    double x = 1.0;
};
/// Photon-dependent overlap: S_ij = x_i x_j off the diagonal.
struct XiModel {
    RealVector x;
};
/// S = S_base (.) S_xi(x); the base is another spec or an explicit Gram matrix.
struct Interpolated {
    std::variant<std::shared_ptr<const GramSpec>, CMatrix> base;
    RealVector x;
};
/// First k photons share one state, the other n-k another, overlap x.
struct TwoSet {
    std::size_t k = 0;
    std::size_t n = 0;
    double x = 0.0;
};
/// Block-diagonal S, blocks in order.
struct DirectSum {
    std::vector<GramSpec> blocks;
};
struct TimeDelay {
    DelayProfile profile;
};
/// Any validated Gram matrix (e.g. from gram_from_vectors).
struct Explicit {
    CMatrix s;
};

}  // namespace gram

/// Declarative distinguishability model; compile_gram turns it into S.
struct GramSpec {
    using Model = std::variant<gram::AllOnes, gram::Identity, gram::XModel, gram::XiModel, gram::Interpolated,
                               gram::TwoSet, gram::DirectSum, gram::TimeDelay, gram::Explicit>;
    Model model;

    static GramSpec all_ones(std::size_t n) { return {gram::AllOnes{n}}; }
    static GramSpec identity(std::size_t n) { return {gram::Identity{n}}; }
    static GramSpec x_model(std::size_t n, double x) { return {gram::XModel{n, x}}; }
    static GramSpec xi_model(RealVector x) { return {gram::XiModel{std::move(x)}}; }
    static GramSpec interpolated(GramSpec base, RealVector x);
    static GramSpec interpolated(CMatrix base, RealVector x);
    static GramSpec two_set(std::size_t k, std::size_t n, double x) { return {gram::TwoSet{k, n, x}}; }
    static GramSpec direct_sum(std::vector<GramSpec> blocks) { return {gram::DirectSum{std::move(blocks)}}; }
    static GramSpec time_delay(DelayProfile profile) { return {gram::TimeDelay{std::move(profile)}}; }
    static GramSpec explicit_matrix(CMatrix s) { return {gram::Explicit{std::move(s)}}; }

    std::string_view kind() const;
    std::size_t dimension() const;
};

/// Throws DomainError unless s is PSD Hermitian with unit diagonal (tol 1e-10).
void validate_gram(const CMatrix& s, std::string_view who = "validate_gram");

/// Compiles and re-validates (PSD, unit diagonal). Parameters outside their
/// range raise DomainError.
CMatrix compile_gram(const GramSpec& spec);

/// S_ij = exp(-(tau_i - tau_j)^2 d^2).
CMatrix compile_time_delay(const DelayProfile& profile);

/// S_ij -> exp(i(theta_j - theta_i)) S_ij.
CMatrix gauge_transform(const CMatrix& s, const RealVector& thetas);

struct NonnegClassResult {
    bool member = false;
    /// When member: gauge_transform(h, *thetas) is entrywise >= -tol.
    std::optional<RealVector> thetas;
};

/// Decides whether h is gauge-equivalent to an entrywise nonnegative matrix.
/// Entries with |h_ij| <= tol are phase wildcards; tol < 0 selects
/// 1e-12 * max|h_ij|. Phases are propagated along a BFS spanning forest and
/// every remaining edge is checked to 1e-8 rad.
NonnegClassResult nonneg_class_test(const CMatrix& h, double tol = -1.0);

}  // namespace bunchlab

#endif  // BUNCHLAB_DISTMODELS_HPP
