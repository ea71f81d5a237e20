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

#include "bunchlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bunchlab/errors.hpp"

namespace bunchlab {

CMatrix complex_gaussian(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (auto& z : g.data()) {
        const double re = normal(rng);
        const double im = normal(rng);
        z = {re, im};
    }
    return g;
}

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    const CMatrix g = complex_gaussian(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

CMatrix random_gram(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
    std::vector<ComplexVector> states;
    states.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const CMatrix v = complex_gaussian(1, dim, rng);
        const double nrm = v.frobenius_norm();
        ComplexVector s(v.data().begin(), v.data().end());
        for (auto& z : s) z /= nrm;
        states.push_back(std::move(s));
    }
    return gram_from_vectors(states);
}

ComplexVector random_state(std::size_t dim, std::mt19937_64& rng) {
    const CMatrix v = complex_gaussian(1, dim, rng);
    const double nrm = v.frobenius_norm();
    ComplexVector s(v.data().begin(), v.data().end());
    for (auto& z : s) z /= nrm;
    return s;
}

InterferometerScene random_scene(std::size_t m, std::size_t n, std::mt19937_64& rng, std::size_t kappa_size) {
    if (m < 2 || n < 1 || n > m) throw DimensionError("random_scene: need 1 <= n <= m and m >= 2");
    if (kappa_size >= m) throw DomainError("random_scene: kappa must be a proper subset");
    if (kappa_size == 0) kappa_size = std::uniform_int_distribution<std::size_t>(1, m - 1)(rng);
    InterferometerScene scene;
    scene.u = haar_unitary(m, rng());
    scene.n = n;
    std::vector<std::size_t> modes(m);
    std::iota(modes.begin(), modes.end(), 0);
    std::shuffle(modes.begin(), modes.end(), rng);
    scene.kappa.assign(modes.begin(), modes.begin() + static_cast<std::ptrdiff_t>(kappa_size));
    std::sort(scene.kappa.begin(), scene.kappa.end());
    return scene;
}

}  // namespace bunchlab
