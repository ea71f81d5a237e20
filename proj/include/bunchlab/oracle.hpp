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

#ifndef BUNCHLAB_ORACLE_HPP
#define BUNCHLAB_ORACLE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "bunchlab/cmatrix.hpp"

namespace bunchlab {

inline constexpr std::size_t kOracleMaxPhotons = 3;
inline constexpr std::size_t kOracleMaxModes = 4;
inline constexpr std::size_t kOracleMaxInternal = 3;

/// Dense first-quantized state of n labelled photons, each living in
/// C^m (spatial) tensor C^L (internal). Basis index is photon-major with
/// photon 0 most significant; each photon's local index is mode * L + internal.
struct FirstQuantState {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t L = 0;
    ComplexVector amplitudes;

    std::size_t local_dimension() const { return m * L; }
    std::size_t dimension() const { return amplitudes.size(); }
    double norm() const;
};

/// (1/sqrt n!) sum over sigma of the product state with photon slot i holding
/// mode sigma(i) and internal state phi_sigma(i). Photon i enters mode i.
FirstQuantState build_symmetrized_input(std::size_t m, std::span<const ComplexVector> internal_states);

/// Applies u tensor 1_L to every photon.
FirstQuantState apply_interferometer(const FirstQuantState& state, const CMatrix& u);

/// Squared norm of the component with every photon's spatial index in kappa.
double project_probability(const FirstQuantState& state, std::span<const std::size_t> kappa);

/// Relabels photons: slot p of the result holds what slot perm[p] held.
FirstQuantState permute_photons(const FirstQuantState& state, std::span<const std::size_t> perm);

/// Probability that all photons leave in kappa, by brute force. kappa is 0-based.
/// SizeError beyond n = 3, m = 4, L = 3.
double simulate_bunching(const CMatrix& u, std::span<const ComplexVector> internal_states,
                         std::span<const std::size_t> kappa);

}  // namespace bunchlab

#endif  // BUNCHLAB_ORACLE_HPP
