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

#ifndef BUNCHLAB_IO_HPP
#define BUNCHLAB_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bunchlab/bunching.hpp"
#include "bunchlab/cmatrix.hpp"
#include "bunchlab/counterexample.hpp"
#include "bunchlab/distmodels.hpp"
#include "bunchlab/interferometer.hpp"
#include "bunchlab/permanent.hpp"

namespace bunchlab::io {

using json = nlohmann::json;

/// MatrixFile: {"rows": r, "cols": c, "re": [...], "im": [...]}, row-major.
/// "im" may be omitted for real matrices. Malformed input raises ParseError.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& a);

/// GramSpec documents carry a "kind" tag; see docs/gramspec.md.
GramSpec gram_spec_from_json(const json& j);
json gram_spec_to_json(const GramSpec& spec);

json network_to_json(const BsNetwork& net);
BsNetwork network_from_json(const json& j);

json to_json(const PermanentValue& v);
json to_json(const BunchingResult& r);
json to_json(const AnomalyReport& r);
json to_json(const ViolationScan& s, bool include_table = true);
json to_json(const ReproductionReport& r);
json to_json(const SearchReport& r);

/// Parses text as JSON, mapping syntax errors to ParseError.
json parse_json(std::string_view text, std::string_view what = "input");
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// "%.17g", enough to round-trip any double.
std::string format_double(double v);

/// Header "d,R,perm_HS,perm_H", one row per grid point.
std::string scan_to_csv(const ViolationScan& scan);
std::vector<ScanPoint> scan_from_csv(std::string_view text);

}  // namespace bunchlab::io

#endif  // BUNCHLAB_IO_HPP
