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

#ifndef BUNCHLAB_RANDOM_HPP
#define BUNCHLAB_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>

#include "bunchlab/cmatrix.hpp"
#include "bunchlab/interferometer.hpp"

namespace bunchlab {

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(seed ^ splitmix64(trial + 0x632BE59BD9B4E019ULL));
}

/// rows x cols matrix of i.i.d. standard complex Gaussians (unit variance per component).
CMatrix complex_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// Random Hermitian matrix with i.i.d. Gaussian upper triangle.
CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng);

/// Gram matrix of n random unit vectors in C^dim.
CMatrix random_gram(std::size_t n, std::size_t dim, std::mt19937_64& rng);

/// Unit vector in C^dim with Gaussian components.
ComplexVector random_state(std::size_t dim, std::mt19937_64& rng);

/// Haar interferometer on m modes, photons in modes 0..n-1, and a uniformly
/// drawn kappa of size kappa_size (0 picks a random size in [1, m-1]).
InterferometerScene random_scene(std::size_t m, std::size_t n, std::mt19937_64& rng, std::size_t kappa_size = 0);

}  // namespace bunchlab

#endif  // BUNCHLAB_RANDOM_HPP
