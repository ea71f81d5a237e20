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

// Command-line front end. Mode indices on the command line are 1-based.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bunchlab/bunching.hpp"
#include "bunchlab/counterexample.hpp"
#include "bunchlab/distmodels.hpp"
#include "bunchlab/errors.hpp"
#include "bunchlab/interferometer.hpp"
#include "bunchlab/io.hpp"
#include "bunchlab/permanent.hpp"
#include "bunchlab/selftest.hpp"

namespace bl = bunchlab;
using bl::io::json;

namespace {

enum Exit : int { kOk = 0, kParse = 2, kDomain = 3, kInternal = 4, kScience = 5 };

// Shortest round-trip text, with ".0" appended to integral values.
std::string num(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        bl::io::write_text_file(out_path, text);
    }
}

std::vector<std::size_t> parse_kappa(const std::string& text, std::size_t m) {
    std::vector<std::size_t> kappa;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string tok = text.substr(pos, comma - pos);
        long long v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
            throw bl::ParseError("--kappa: bad mode '" + tok + "'");
        }
        if (v < 1 || static_cast<std::size_t>(v) > m) {
            throw bl::IndexError("--kappa: mode " + tok + " outside 1.." + std::to_string(m));
        }
        kappa.push_back(static_cast<std::size_t>(v - 1));
        pos = comma + 1;
    }
    std::sort(kappa.begin(), kappa.end());
    if (std::adjacent_find(kappa.begin(), kappa.end()) != kappa.end()) throw bl::ParseError("--kappa: repeated mode");
    return kappa;
}

struct Common {
    std::uint64_t seed = 0;
    std::string format = "table";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
    cmd->add_option("--seed", c.seed, "Seed (echoed in the report)");
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats));
    cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
}

int cmd_perm(const std::string& path, const std::string& engine, const Common& c) {
    const bl::CMatrix a = bl::io::matrix_from_json(bl::io::read_json_file(path));
    if (!a.is_square()) throw bl::DimensionError("perm: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    std::vector<bl::PermEngine> engines;
    if (engine == "all") {
        engines = {bl::PermEngine::ryser, bl::PermEngine::glynn};
        if (a.rows() <= bl::kMaxNaiveDim) engines.push_back(bl::PermEngine::naive);
    } else {
        engines = {bl::parse_engine(engine)};
    }
    std::vector<bl::PermanentValue> values;
    for (auto e : engines) values.push_back(bl::permanent(a, e));
    double spread = 0.0;
    for (const auto& v : values) spread = std::max(spread, bl::relative_difference(values.front(), v));

    if (c.format == "json") {
        json j{{"seed", c.seed}, {"n", a.rows()}};
        for (std::size_t k = 0; k < engines.size(); ++k) j["engines"][std::string(bl::engine_name(engines[k]))] = bl::io::to_json(values[k]);
        if (engines.size() > 1) j["max_relative_spread"] = spread;
        emit(j.dump(2) + "\n", c.out);
    } else {
        std::string text;
        for (std::size_t k = 0; k < engines.size(); ++k) {
            const bl::cplx z = values[k].to_complex();
            text += std::string(bl::engine_name(engines[k])) + " " + num(z.real()) + " imag=" + num(z.imag()) +
                    " mantissa=" + num(values[k].value.real()) + "," + num(values[k].value.imag()) +
                    " log2_scale=" + std::to_string(values[k].log2_scale) + "\n";
        }
        if (engines.size() > 1) text += "max_relative_spread " + num(spread) + "\n";
        text += "seed " + std::to_string(c.seed) + "\n";
        emit(text, c.out);
    }
    return kOk;
}

void write_fixtures(const std::filesystem::path& dir, const bl::ReproductionReport& rep, const bl::CounterexampleBundle& b) {
    std::filesystem::create_directories(dir);
    bl::io::write_text_file(dir / "m.json", bl::io::matrix_to_json(b.m).dump(2) + "\n");
    bl::io::write_text_file(dir / "a.json", bl::io::matrix_to_json(b.a).dump(2) + "\n");
    bl::io::write_text_file(dir / "h.json", bl::io::matrix_to_json(b.h).dump(2) + "\n");
    bl::io::write_text_file(dir / "unitary.json", bl::io::matrix_to_json(b.embedding.scene.u).dump(2) + "\n");
    const bl::GramSpec at_max =
        bl::GramSpec::time_delay(bl::DelayProfile{rep.anomaly_h.tau_max, rep.scan.d_max, 1.0});
    bl::io::write_text_file(dir / "gram_d_max.json", bl::io::gram_spec_to_json(at_max).dump(2) + "\n");
    bl::io::write_text_file(dir / "scan.csv", bl::io::scan_to_csv(rep.scan));
}

int cmd_reproduce(const Common& c, const std::string& fixtures) {
    bl::ReproductionOptions opts;
#ifdef BUNCHLAB_FAULT_INJECT
    opts.data.m_r[0][0] += 1;
#endif
    const bl::ReproductionReport rep = bl::reproduce_counterexample(opts);
    if (!fixtures.empty()) write_fixtures(fixtures, rep, bl::load_counterexample(opts.data));

    if (c.format == "json") {
        json j = bl::io::to_json(rep);
        j["seed"] = c.seed;
        emit(j.dump(2) + "\n", c.out);
    } else if (c.format == "csv") {
        emit(bl::io::scan_to_csv(rep.scan), c.out);
    } else {
        std::string text;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-36s %-24s %-14s %-12s %s\n", "check", "computed", "expected", "tolerance", "result");
        text += buf;
        for (const auto& ch : rep.checks) {
            std::snprintf(buf, sizeof buf, "%-36s %-24.12g %-14.6g %-12s %s\n", ch.name.c_str(), ch.computed, ch.expected,
                          ((ch.relative ? "rel " : "abs ") + num(ch.tolerance)).c_str(), ch.pass ? "PASS" : "FAIL");
            text += buf;
        }
        std::snprintf(buf, sizeof buf, "reck elements %zu (%zu non-trivial, quoted %zu), reconstruction error %.3e\n",
                      rep.reck_elements, rep.reck_nontrivial, rep.quoted_beam_splitters, rep.reck_error);
        text += buf;
        text += "seed " + std::to_string(c.seed) + "\n";
        text += rep.all_pass ? "all checks passed\n" : "some checks FAILED\n";
        emit(text, c.out);
    }
    return rep.all_pass ? kOk : kScience;
}

int cmd_bunch(const std::string& unitary_path, const std::string& kappa_text, const std::string& gram_path,
              const std::string& s_path, std::size_t n_flag, const Common& c) {
    const bl::CMatrix u = bl::io::matrix_from_json(bl::io::read_json_file(unitary_path));
    if (!u.is_square()) throw bl::DimensionError("bunch: unitary must be square");
    if (gram_path.empty() == s_path.empty()) throw bl::ParseError("bunch: give exactly one of --gram or --s");
    const bl::CMatrix s = gram_path.empty()
                              ? bl::io::matrix_from_json(bl::io::read_json_file(s_path))
                              : bl::compile_gram(bl::io::gram_spec_from_json(bl::io::read_json_file(gram_path)));
    bl::validate_gram(s, "bunch");
    const std::size_t n = n_flag == 0 ? s.rows() : n_flag;
    if (n != s.rows()) throw bl::DimensionError("bunch: --n differs from the Gram dimension");

    bl::InterferometerScene scene{u, n, parse_kappa(kappa_text, u.rows())};
    scene.validate();
    const bl::CMatrix h = bl::h_matrix(scene);
    const bl::BunchingResult r = bl::bunching_prob(h, s);
    const bool nonneg = bl::nonneg_class_test(h).member;

    json kappa1 = json::array();
    for (auto k : scene.kappa) kappa1.push_back(k + 1);
    if (c.format == "json") {
        json j = bl::io::to_json(r);
        j["n"] = n;
        j["m"] = u.rows();
        j["kappa"] = kappa1;
        j["h_nonnegative_class"] = nonneg;
        j["seed"] = c.seed;
        emit(j.dump(2) + "\n", c.out);
    } else {
        std::string text = "probability " + num(r.probability) + "\n";
        text += "permanent " + num(r.permanent.real()) + " imag=" + num(r.permanent.imag()) + "\n";
        text += "engine_agreement " + num(r.engine_agreement) + "\n";
        text += "kappa " + kappa1.dump() + "\n";
        text += std::string("h_nonnegative_class ") + (nonneg ? "yes (no anomalous bunching possible)" : "no") + "\n";
        text += "seed " + std::to_string(c.seed) + "\n";
        emit(text, c.out);
    }
    return kOk;
}

int cmd_search(std::size_t n, std::size_t trials, const std::string& sampler, const Common& c) {
    const bl::SearchReport r = bl::conjecture_search(n, trials, bl::SamplerSpec::parse(sampler), c.seed);
    if (c.format == "json") {
        emit(bl::io::to_json(r).dump(2) + "\n", c.out);
    } else {
        std::string text = "n " + std::to_string(r.n) + "\ntrials " + std::to_string(r.trials) + "\nseed " +
                           std::to_string(r.seed) + "\nsampler " + r.sampler + "\n";
        text += "max_relative_margin " + num(r.max_relative_margin) + "\n";
        text += "max_margin " + num(r.max_margin) + "\n";
        text += "argmax_trial " + std::to_string(r.argmax_trial) + "\n";
        text += "positive_count " + std::to_string(r.positive_count) + "\n";
        text += "histogram";
        for (auto h : r.histogram) text += " " + std::to_string(h);
        text += "\n";
        emit(text, c.out);
    }
    return kOk;
}

int cmd_reck(const std::string& path, const Common& c) {
    const bl::CMatrix u = bl::io::matrix_from_json(bl::io::read_json_file(path));
    const bl::BsNetwork net = bl::reck_decompose(u);
    const double err = bl::max_abs_diff(bl::reconstruct(net), u);
    if (c.format == "json") {
        json j = bl::io::network_to_json(net);
        j["element_count"] = net.elements.size();
        j["reconstruction_error"] = err;
        j["seed"] = c.seed;
        emit(j.dump(2) + "\n", c.out);
    } else {
        std::string text;
        for (const auto& e : net.elements) {
            text += "bs modes " + std::to_string(e.mode_a + 1) + "," + std::to_string(e.mode_b + 1) + " theta " +
                    num(e.theta) + " phi " + num(e.phi) + "\n";
        }
        text += "phases";
        for (double p : net.phases) text += " " + num(p);
        text += "\nelement_count " + std::to_string(net.elements.size()) + "\n";
        text += "reconstruction_error " + num(err) + "\n";
        text += "seed " + std::to_string(c.seed) + "\n";
        emit(text, c.out);
    }
    return kOk;
}

int cmd_selftest(bool quick, const Common& c) {
    const bl::SelftestReport r = bl::run_selftest(quick, c.seed);
    emit(bl::format_selftest(r), c.out);
    return r.all_pass ? kOk : kScience;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boson bunching probabilities and permanent inequalities"};
    app.require_subcommand(1);

    Common perm_c, repro_c, bunch_c, search_c, reck_c, self_c;

    std::string perm_path, perm_engine = "ryser";
    auto* perm = app.add_subcommand("perm", "Permanent of a matrix file");
    perm->add_option("matrix", perm_path, "MatrixFile JSON")->required();
    perm->add_option("--engine", perm_engine, "ryser, glynn, naive or all")
        ->check(CLI::IsMember({"ryser", "glynn", "naive", "all"}));
    add_common(perm, perm_c, {"table", "json"});

    std::string fixtures;
    auto* repro = app.add_subcommand("reproduce", "Rebuild the 16-photon counterexample and check the quoted numbers");
    repro->add_option("--fixtures", fixtures, "Also write M, A, H, the unitary and the d_max Gram spec here");
    add_common(repro, repro_c, {"table", "json", "csv"});

    std::string unitary, kappa, gram, s_file;
    std::size_t bunch_n = 0;
    auto* bunch = app.add_subcommand("bunch", "Probability that all photons leave in the modes kappa");
    bunch->add_option("--unitary", unitary, "MatrixFile with the m x m interferometer")->required();
    bunch->add_option("--kappa", kappa, "Comma-separated output modes, 1-based")->required();
    bunch->add_option("--gram", gram, "GramSpec JSON");
    bunch->add_option("--s", s_file, "Explicit Gram matrix (MatrixFile)");
    bunch->add_option("--n", bunch_n, "Photon count (defaults to the Gram dimension)");
    add_common(bunch, bunch_c, {"table", "json"});

    std::size_t search_n = 3, trials = 1000;
    std::string sampler = "haar_gram";
    auto* search = app.add_subcommand("search", "Random search for lambda_max(F^A) > perm(A)");
    search->add_option("--n", search_n, "Matrix size");
    search->add_option("--trials", trials, "Number of samples");
    search->add_option("--sampler", sampler, "haar_gram, wishart, low_rank(r), structured_interp, near_counterexample(eps)");
    add_common(search, search_c, {"table", "json"});

    std::string reck_path;
    auto* reck = app.add_subcommand("reck", "Reck decomposition of a unitary");
    reck->add_option("unitary", reck_path, "MatrixFile JSON")->required();
    add_common(reck, reck_c, {"table", "json"});

    bool quick = false;
    auto* self = app.add_subcommand("selftest", "Oracle-equivalence and property suites");
    self->group("");
    self->add_flag("--quick", quick, "Run a reduced subset");
    add_common(self, self_c, {"table"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (perm->parsed()) return cmd_perm(perm_path, perm_engine, perm_c);
        if (repro->parsed()) return cmd_reproduce(repro_c, fixtures);
        if (bunch->parsed()) return cmd_bunch(unitary, kappa, gram, s_file, bunch_n, bunch_c);
        if (search->parsed()) return cmd_search(search_n, trials, sampler, search_c);
        if (reck->parsed()) return cmd_reck(reck_path, reck_c);
        if (self->parsed()) return cmd_selftest(quick, self_c);
    } catch (const bl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const bl::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const bl::DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const bl::SizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const bl::IndexError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
