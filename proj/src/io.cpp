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

#include "bunchlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "bunchlab/errors.hpp"

namespace bunchlab::io {

namespace {

void require_object(const json& j, std::string_view what) {
    if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError(std::string(what) + ": unknown key '" + key + "'");
    }
}

const json& field(const json& j, const char* key, std::string_view what) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string(what) + ": missing '" + key + "'");
    return *it;
}

double as_double(const json& j, std::string_view what) {
    if (!j.is_number()) throw ParseError(std::string(what) + ": expected a number");
    return j.get<double>();
}

std::size_t as_size(const json& j, std::string_view what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

RealVector as_real_vector(const json& j, std::string_view what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
    RealVector v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(as_double(e, what));
    return v;
}

json real_vector(const RealVector& v) { return json(v); }

}  // namespace

CMatrix matrix_from_json(const json& j) {
    require_object(j, "matrix");
    reject_unknown_keys(j, {"rows", "cols", "re", "im"}, "matrix");
    const std::size_t rows = as_size(field(j, "rows", "matrix"), "matrix.rows");
    const std::size_t cols = as_size(field(j, "cols", "matrix"), "matrix.cols");
    const RealVector re = as_real_vector(field(j, "re", "matrix"), "matrix.re");
    RealVector im(re.size(), 0.0);
    if (j.contains("im")) im = as_real_vector(j["im"], "matrix.im");
    if (re.size() != rows * cols || im.size() != rows * cols) {
        throw ParseError("matrix: re/im length must equal rows*cols = " + std::to_string(rows * cols));
    }
    CMatrix a(rows, cols);
    for (std::size_t k = 0; k < re.size(); ++k) {
        if (!std::isfinite(re[k]) || !std::isfinite(im[k])) throw ParseError("matrix: non-finite entry");
        a.data()[k] = {re[k], im[k]};
    }
    return a;
}

json matrix_to_json(const CMatrix& a) {
    json re = json::array();
    json im = json::array();
    for (std::size_t k = 0; k < a.rows() * a.cols(); ++k) {
        re.push_back(a.data()[k].real());
        im.push_back(a.data()[k].imag());
    }
    return json{{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}, {"im", im}};
}

GramSpec gram_spec_from_json(const json& j) {
    require_object(j, "gram spec");
    const json& kind_j = field(j, "kind", "gram spec");
    if (!kind_j.is_string()) throw ParseError("gram spec: 'kind' must be a string");
    const std::string kind = kind_j.get<std::string>();
    const std::string what = "gram spec (" + kind + ")";

    if (kind == "all_ones" || kind == "identity") {
        reject_unknown_keys(j, {"kind", "n"}, what);
        const std::size_t n = as_size(field(j, "n", what), what + ".n");
        return kind == "all_ones" ? GramSpec::all_ones(n) : GramSpec::identity(n);
    }
    if (kind == "x_model") {
        reject_unknown_keys(j, {"kind", "n", "x"}, what);
        return GramSpec::x_model(as_size(field(j, "n", what), what + ".n"), as_double(field(j, "x", what), what + ".x"));
    }
    if (kind == "xi_model") {
        reject_unknown_keys(j, {"kind", "x"}, what);
        return GramSpec::xi_model(as_real_vector(field(j, "x", what), what + ".x"));
    }
    if (kind == "interpolated") {
        reject_unknown_keys(j, {"kind", "base", "x"}, what);
        const json& base = field(j, "base", what);
        require_object(base, what + ".base");
        RealVector x = as_real_vector(field(j, "x", what), what + ".x");
        if (base.contains("kind")) return GramSpec::interpolated(gram_spec_from_json(base), std::move(x));
        return GramSpec::interpolated(matrix_from_json(base), std::move(x));
    }
    if (kind == "two_set") {
        reject_unknown_keys(j, {"kind", "k", "n", "x"}, what);
        return GramSpec::two_set(as_size(field(j, "k", what), what + ".k"), as_size(field(j, "n", what), what + ".n"),
                                 as_double(field(j, "x", what), what + ".x"));
    }
    if (kind == "direct_sum") {
        reject_unknown_keys(j, {"kind", "blocks"}, what);
        const json& blocks = field(j, "blocks", what);
        if (!blocks.is_array()) throw ParseError(what + ": 'blocks' must be an array");
        std::vector<GramSpec> specs;
        for (const auto& b : blocks) specs.push_back(gram_spec_from_json(b));
        return GramSpec::direct_sum(std::move(specs));
    }
    if (kind == "time_delay") {
        reject_unknown_keys(j, {"kind", "tau", "d", "sigma", "arrival_times"}, what);
        const double sigma = j.contains("sigma") ? as_double(j["sigma"], what + ".sigma") : 1.0;
        if (j.contains("arrival_times")) {
            if (j.contains("tau") || j.contains("d")) throw ParseError(what + ": give either arrival_times or tau and d");
            return GramSpec::time_delay(
                DelayProfile::from_arrival_times(as_real_vector(j["arrival_times"], what + ".arrival_times"), sigma));
        }
        return GramSpec::time_delay(DelayProfile{as_real_vector(field(j, "tau", what), what + ".tau"),
                                                 as_double(field(j, "d", what), what + ".d"), sigma});
    }
    if (kind == "explicit") {
        reject_unknown_keys(j, {"kind", "matrix"}, what);
        return GramSpec::explicit_matrix(matrix_from_json(field(j, "matrix", what)));
    }
    throw ParseError("gram spec: unknown kind '" + kind + "'");
}

json gram_spec_to_json(const GramSpec& spec) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, gram::AllOnes>) {
                return {{"kind", "all_ones"}, {"n", m.n}};
            } else if constexpr (std::is_same_v<T, gram::Identity>) {
                return {{"kind", "identity"}, {"n", m.n}};
            } else if constexpr (std::is_same_v<T, gram::XModel>) {
                return {{"kind", "x_model"}, {"n", m.n}, {"x", m.x}};
            } else if constexpr (std::is_same_v<T, gram::XiModel>) {
                return {{"kind", "xi_model"}, {"x", real_vector(m.x)}};
            } else if constexpr (std::is_same_v<T, gram::Interpolated>) {
                json base = std::holds_alternative<CMatrix>(m.base)
                                ? matrix_to_json(std::get<CMatrix>(m.base))
                                : gram_spec_to_json(*std::get<std::shared_ptr<const GramSpec>>(m.base));
                return {{"kind", "interpolated"}, {"base", base}, {"x", real_vector(m.x)}};
            } else if constexpr (std::is_same_v<T, gram::TwoSet>) {
                return {{"kind", "two_set"}, {"k", m.k}, {"n", m.n}, {"x", m.x}};
            } else if constexpr (std::is_same_v<T, gram::DirectSum>) {
                json blocks = json::array();
                for (const auto& b : m.blocks) blocks.push_back(gram_spec_to_json(b));
                return {{"kind", "direct_sum"}, {"blocks", blocks}};
            } else if constexpr (std::is_same_v<T, gram::TimeDelay>) {
                return {{"kind", "time_delay"},
                        {"tau", real_vector(m.profile.tau)},
                        {"d", m.profile.d},
                        {"sigma", m.profile.sigma}};
            } else {
                return {{"kind", "explicit"}, {"matrix", matrix_to_json(m.s)}};
            }
        },
        spec.model);
}

json network_to_json(const BsNetwork& net) {
    json elements = json::array();
    for (const auto& e : net.elements) {
        elements.push_back({{"modes", {e.mode_a, e.mode_b}}, {"theta", e.theta}, {"phi", e.phi}});
    }
    return {{"m", net.m}, {"elements", elements}, {"phases", real_vector(net.phases)}};
}

BsNetwork network_from_json(const json& j) {
    require_object(j, "network");
    reject_unknown_keys(j, {"m", "elements", "phases"}, "network");
    BsNetwork net;
    net.m = as_size(field(j, "m", "network"), "network.m");
    const json& elements = field(j, "elements", "network");
    if (!elements.is_array()) throw ParseError("network: 'elements' must be an array");
    for (const auto& e : elements) {
        require_object(e, "network element");
        const json& modes = field(e, "modes", "network element");
        if (!modes.is_array() || modes.size() != 2) throw ParseError("network element: 'modes' must have two entries");
        net.elements.push_back({as_size(modes[0], "modes"), as_size(modes[1], "modes"),
                                as_double(field(e, "theta", "network element"), "theta"),
                                as_double(field(e, "phi", "network element"), "phi")});
    }
    net.phases = as_real_vector(field(j, "phases", "network"), "network.phases");
    return net;
}

json to_json(const PermanentValue& v) {
    const cplx z = v.to_complex();
    return {{"re", z.real()},
            {"im", z.imag()},
            {"mantissa_re", v.value.real()},
            {"mantissa_im", v.value.imag()},
            {"log2_scale", v.log2_scale}};
}

json to_json(const BunchingResult& r) {
    return {{"probability", r.probability},
            {"permanent_re", r.permanent.real()},
            {"permanent_im", r.permanent.imag()},
            {"engine_agreement", r.engine_agreement}};
}

json to_json(const AnomalyReport& r) {
    return {{"perm", r.perm_g},
            {"lambda_max_r", r.lambda_max_r},
            {"tau_max", real_vector(r.tau_max)},
            {"criterion_margin", r.criterion_margin},
            {"anomalous", r.anomalous},
            {"laplace_residual", r.laplace_residual}};
}

json to_json(const ViolationScan& s, bool include_table) {
    json j{{"perm_h", s.perm_h},
           {"d_max", s.d_max},
           {"r_max", s.r_max},
           {"perm_hs_at_max", s.perm_hs_at_max},
           {"quadratic_coefficient", s.quadratic_coefficient},
           {"points", s.table.size()}};
    if (include_table) {
        json rows = json::array();
        for (const auto& p : s.table) rows.push_back({p.d, p.ratio, p.perm_hs, p.perm_h});
        j["table_columns"] = {"d", "R", "perm_HS", "perm_H"};
        j["table"] = rows;
    }
    return j;
}

json to_json(const ReproductionReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"computed", c.computed},
                          {"expected", c.expected},
                          {"tolerance", c.tolerance},
                          {"relative", c.relative},
                          {"pass", c.pass}});
    }
    return {{"gamma", r.gamma},
            {"anomaly_a", to_json(r.anomaly_a)},
            {"anomaly_h", to_json(r.anomaly_h)},
            {"ratio", r.ratio},
            {"second_derivative_at_zero", r.derivative_at_zero.second_at_zero},
            {"scan", to_json(r.scan, false)},
            {"reck_elements", r.reck_elements},
            {"reck_nontrivial_elements", r.reck_nontrivial},
            {"reck_error", r.reck_error},
            {"quoted_beam_splitters", r.quoted_beam_splitters},
            {"checks", checks},
            {"all_pass", r.all_pass}};
}

json to_json(const SearchReport& r) {
    return {{"n", r.n},
            {"trials", r.trials},
            {"seed", r.seed},
            {"sampler", r.sampler},
            {"max_relative_margin", r.max_relative_margin},
            {"max_margin", r.max_margin},
            {"argmax_trial", r.argmax_trial},
            {"argmax", matrix_to_json(r.argmax)},
            {"positive_count", r.positive_count},
            {"histogram", r.histogram}};
}

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed for " + path.string());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string scan_to_csv(const ViolationScan& scan) {
    std::string out = "d,R,perm_HS,perm_H\n";
    for (const auto& p : scan.table) {
        out += format_double(p.d) + ',' + format_double(p.ratio) + ',' + format_double(p.perm_hs) + ',' +
               format_double(p.perm_h) + '\n';
    }
    return out;
}

std::vector<ScanPoint> scan_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "d,R,perm_HS,perm_H") throw ParseError("scan csv: bad header");
    std::vector<ScanPoint> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, cell, ',')) throw ParseError("scan csv: short row");
            std::size_t used = 0;
            try {
                vals[k] = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw ParseError("scan csv: bad number '" + cell + "'");
            }
            if (used != cell.size()) throw ParseError("scan csv: bad number '" + cell + "'");
        }
        if (std::getline(row, cell, ',')) throw ParseError("scan csv: extra column");
        points.push_back({vals[0], vals[1], vals[2], vals[3]});
    }
    return points;
}

}  // namespace bunchlab::io
