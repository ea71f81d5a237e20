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

#ifndef BUNCHLAB_COUNTEREXAMPLE_HPP
#define BUNCHLAB_COUNTEREXAMPLE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bunchlab/bunching.hpp"
#include "bunchlab/cmatrix.hpp"
#include "bunchlab/interferometer.hpp"

namespace bunchlab {

/// Integer real and imaginary parts of the 2 x 16 factor M of the 16-photon
/// counterexample A = M^dagger M.
struct CounterexampleData {
    std::array<std::array<int, 16>, 2> m_r{};
    std::array<std::array<int, 16>, 2> m_i{};
};

/// FNV-1a over the little-endian int32 bytes of m_r then m_i.
std::uint64_t checksum(const CounterexampleData& data);

inline constexpr std::uint64_t kCounterexampleChecksum = 0xbacc107819efa4b2ULL;

/// The embedded published integers.
const CounterexampleData& published_counterexample();

struct CounterexampleBundle {
    CounterexampleData data;
    CMatrix m;  ///< M_R + i M_I
    CMatrix a;  ///< M^dagger M (16 x 16, rank 2)
    double gamma = 0.0;
    RowEmbedding embedding;  ///< 18-mode unitary, kappa = {0, 1}
    CMatrix h;               ///< gamma * A, taken from the embedded scene
};

/// Validates the checksum (DataCorruptionError), builds M, A, gamma, the
/// embedding and H, and checks rank(A) = 2.
CounterexampleBundle load_counterexample(const CounterexampleData& data = published_counterexample());

/// One comparison against a quoted reference value.
struct QuotedCheck {
    std::string name;
    double computed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool relative = true;  ///< tolerance is relative to |expected|, else absolute
    bool pass = false;
};

struct ReproductionOptions {
    ScanGrid grid{};
    CounterexampleData data = published_counterexample();
};

/// Beam splitters mixing less than this (|sin theta|) are counted as trivial.
inline constexpr double kTrivialMixing = 1e-6;

struct ReproductionReport {
    double gamma = 0.0;
    AnomalyReport anomaly_a;  ///< criterion on the raw A
    AnomalyReport anomaly_h;  ///< criterion on H = gamma A; tau_max comes from here
    double ratio = 0.0;       ///< lambda_max(F^A) / perm(A)
    DelayDerivative derivative_at_zero;
    ViolationScan scan;
    std::size_t reck_elements = 0;
    std::size_t reck_nontrivial = 0;  ///< elements with |sin theta| > kTrivialMixing
    double reck_error = 0.0;
    std::size_t quoted_beam_splitters = 32;
    std::vector<QuotedCheck> checks;
    bool all_pass = false;
};

/// load -> embed -> H -> anomaly criterion -> violation scan -> Reck. Errors are
/// rethrown with the failing stage prefixed to the message.
ReproductionReport reproduce_counterexample(const ReproductionOptions& options = {});

// ---------------------------------------------------------------------------
// Randomized search for matrices violating lambda_max(Sym Re F^A) <= perm(A)
// ---------------------------------------------------------------------------

enum class SamplerKind { haar_gram, wishart, low_rank, structured_interp, near_counterexample };

struct SamplerSpec {
    SamplerKind kind = SamplerKind::haar_gram;
    std::size_t rank = 2;    ///< low_rank
    double epsilon = 1e-6;   ///< near_counterexample: relative size of the perturbation of M

    /// Accepts haar_gram, wishart, low_rank(r), structured_interp, near_counterexample(eps).
    static SamplerSpec parse(const std::string& text);
    std::string to_string() const;
};

/// Draws one PSD n x n sample. near_counterexample requires n = 16 and returns
/// (M + E)^dagger (M + E) with ||E||_F = epsilon ||M||_F.
CMatrix draw_sample(const SamplerSpec& sampler, std::size_t n, std::uint64_t seed);

inline constexpr std::size_t kHistogramBins = 20;

struct SearchReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::string sampler;
    double max_relative_margin = 0.0;  ///< max over trials of (lambda - perm) / perm
    double max_margin = 0.0;           ///< absolute margin of that sample
    std::size_t argmax_trial = 0;
    CMatrix argmax;
    std::size_t positive_count = 0;  ///< anomalous samples
    /// Decade bins of the relative margin: bin k < kHistogramBins counts
    /// margins in [1e(k-20), 1e(k-19)), with bin 0 also taking everything
    /// smaller (including non-positive margins); the last bin counts margins >= 1.
    /// lambda_max >= perm always holds, so non-anomalous samples sit at roundoff level.
    std::vector<std::size_t> histogram;
};

/// Evaluates anomaly_criterion on `trials` samples; trial t uses seed
/// trial_seed(seed, t), so results do not depend on scheduling.
SearchReport conjecture_search(std::size_t n, std::size_t trials, const SamplerSpec& sampler, std::uint64_t seed);

}  // namespace bunchlab

#endif  // BUNCHLAB_COUNTEREXAMPLE_HPP
