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

#ifndef BUNCHLAB_SELFTEST_HPP
#define BUNCHLAB_SELFTEST_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace bunchlab {

struct SuiteResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst = 0.0;  ///< largest error (or violation) seen, in the suite's own units
    std::string first_failure;
};

struct SelftestReport {
    std::uint64_t seed = 0;
    bool quick = false;
    std::vector<SuiteResult> suites;
    bool all_pass = false;
};

/// Oracle-equivalence and property suites. Deterministic for a given seed;
/// quick runs about a fifth of the trials.
SelftestReport run_selftest(bool quick, std::uint64_t seed = 0);

/// One line per suite plus a closing summary line.
std::string format_selftest(const SelftestReport& report);

}  // namespace bunchlab

#endif  // BUNCHLAB_SELFTEST_HPP
