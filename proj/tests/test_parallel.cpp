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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "bunchlab/parallel.hpp"
#include "bunchlab/random.hpp"

using namespace bunchlab;

TEST_CASE("parallel_for visits every index once") {
    for (const char* threads : {"1", "3", "0"}) {
        setenv("BUNCHLAB_THREADS", threads, 1);
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
    unsetenv("BUNCHLAB_THREADS");
    parallel_for(0, [](std::size_t) { FAIL("called on empty range"); });
}

TEST_CASE("worker_count honours the environment") {
    setenv("BUNCHLAB_THREADS", "5", 1);
    CHECK(worker_count() == 5);
    setenv("BUNCHLAB_THREADS", "0", 1);
    CHECK(worker_count() >= 1);
    unsetenv("BUNCHLAB_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("exceptions propagate") {
    setenv("BUNCHLAB_THREADS", "4", 1);
    CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
        if (i == 37) throw std::runtime_error("boom");
    }),
                    std::runtime_error);
    unsetenv("BUNCHLAB_THREADS");
}

TEST_CASE("trial seeds") {
    static_assert(trial_seed(1, 2) == trial_seed(1, 2));
    CHECK(trial_seed(1, 2) != trial_seed(1, 3));
    CHECK(trial_seed(1, 2) != trial_seed(2, 2));
    std::mt19937_64 a(4), b(4);
    CHECK(complex_gaussian(3, 3, a) == complex_gaussian(3, 3, b));
}
