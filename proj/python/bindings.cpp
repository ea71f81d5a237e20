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

// Python bindings. Matrices cross as complex128 NumPy arrays; structured
// results cross as JSON text and are decoded in bunchlab/__init__.py.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>
#include <vector>

#include "bunchlab/bunching.hpp"
#include "bunchlab/counterexample.hpp"
#include "bunchlab/distmodels.hpp"
#include "bunchlab/errors.hpp"
#include "bunchlab/interferometer.hpp"
#include "bunchlab/io.hpp"
#include "bunchlab/oracle.hpp"
#include "bunchlab/permanent.hpp"
#include "bunchlab/selftest.hpp"

namespace py = pybind11;
namespace bl = bunchlab;

namespace {

using ComplexArray = py::array_t<bl::cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

bl::CMatrix to_matrix(const ComplexArray& a) {
    if (a.ndim() != 2) throw bl::DimensionError("expected a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    return bl::CMatrix(rows, cols, std::vector<bl::cplx>(a.data(), a.data() + rows * cols));
}

ComplexArray to_array(const bl::CMatrix& m) {
    ComplexArray out({m.rows(), m.cols()});
    std::memcpy(out.mutable_data(), m.data().data(), m.data().size() * sizeof(bl::cplx));
    return out;
}

bl::ComplexVector to_vector(const ComplexArray& a) {
    if (a.ndim() != 1) throw bl::DimensionError("expected a 1-D array");
    return bl::ComplexVector(a.data(), a.data() + a.shape(0));
}

bl::RealVector to_real(const RealArray& a) {
    if (a.ndim() != 1) throw bl::DimensionError("expected a 1-D array");
    return bl::RealVector(a.data(), a.data() + a.shape(0));
}

std::vector<bl::ComplexVector> to_states(const std::vector<ComplexArray>& states) {
    std::vector<bl::ComplexVector> out;
    for (const auto& s : states) out.push_back(to_vector(s));
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Boson bunching probabilities and permanent inequalities";

    static py::exception<bl::Error> error(m, "Error", PyExc_RuntimeError);
    py::register_exception<bl::DimensionError>(m, "DimensionError", error);
    py::register_exception<bl::DomainError>(m, "DomainError", error);
    py::register_exception<bl::SizeError>(m, "SizeError", error);
    py::register_exception<bl::IndexError>(m, "IndexError", error);
    py::register_exception<bl::PrecisionError>(m, "PrecisionError", error);
    py::register_exception<bl::ConvergenceError>(m, "ConvergenceError", error);
    py::register_exception<bl::DataCorruptionError>(m, "DataCorruptionError", error);
    py::register_exception<bl::ParseError>(m, "ParseError", error);

    m.def(
        "permanent",
        [](const ComplexArray& a, const std::string& engine) {
            return bl::permanent(to_matrix(a), bl::parse_engine(engine)).to_complex();
        },
        py::arg("a"), py::arg("engine") = "ryser");

    m.def(
        "permanent_scaled",
        [](const ComplexArray& a, const std::string& engine) {
            const bl::PermanentValue v = bl::permanent(to_matrix(a), bl::parse_engine(engine));
            return py::make_tuple(v.value, v.log2_scale);
        },
        py::arg("a"), py::arg("engine") = "ryser");

    m.def("f_matrix", [](const ComplexArray& a) { return to_array(bl::f_matrix(to_matrix(a)).entries); });

    m.def("anomaly_criterion",
          [](const ComplexArray& g) { return bl::io::to_json(bl::anomaly_criterion(to_matrix(g))).dump(); });

    m.def("bunching_prob", [](const ComplexArray& h, const ComplexArray& s) {
        return bl::io::to_json(bl::bunching_prob(to_matrix(h), to_matrix(s))).dump();
    });

    m.def("h_matrix", [](const ComplexArray& u, std::size_t n, const std::vector<std::size_t>& kappa) {
        return to_array(bl::h_matrix_for_modes(to_matrix(u), n, kappa));
    });

    m.def("gram_from_vectors",
          [](const std::vector<ComplexArray>& states) { return to_array(bl::gram_from_vectors(to_states(states))); });

    m.def("compile_gram", [](const std::string& spec) {
        return to_array(bl::compile_gram(bl::io::gram_spec_from_json(bl::io::parse_json(spec, "gram spec"))));
    });

    m.def("haar_unitary", [](std::size_t size, std::uint64_t seed) { return to_array(bl::haar_unitary(size, seed)); });

    m.def("reck_decompose",
          [](const ComplexArray& u) { return bl::io::network_to_json(bl::reck_decompose(to_matrix(u))).dump(); });

    m.def("reconstruct", [](const std::string& network) {
        return to_array(bl::reconstruct(bl::io::network_from_json(bl::io::parse_json(network, "network"))));
    });

    m.def("simulate_bunching",
          [](const ComplexArray& u, const std::vector<ComplexArray>& states, const std::vector<std::size_t>& kappa) {
              return bl::simulate_bunching(to_matrix(u), to_states(states), kappa);
          });

    m.def(
        "violation_scan",
        [](const ComplexArray& h, const RealArray& tau, double start, double stop, double step) {
            const bl::CMatrix hm = to_matrix(h);
            const bl::RealVector t = to_real(tau);
            py::gil_scoped_release release;
            return bl::io::to_json(bl::violation_scan(hm, t, bl::ScanGrid{start, stop, step})).dump();
        },
        py::arg("h"), py::arg("tau"), py::arg("start") = 0.0, py::arg("stop") = 2.0, py::arg("step") = 0.001);

    m.def("counterexample", []() {
        const bl::CounterexampleBundle b = bl::load_counterexample();
        py::dict d;
        d["m"] = to_array(b.m);
        d["a"] = to_array(b.a);
        d["h"] = to_array(b.h);
        d["unitary"] = to_array(b.embedding.scene.u);
        d["gamma"] = b.gamma;
        return d;
    });

    m.def("reproduce", []() {
        py::gil_scoped_release release;
        return bl::io::to_json(bl::reproduce_counterexample()).dump();
    });

    m.def(
        "conjecture_search",
        [](std::size_t n, std::size_t trials, const std::string& sampler, std::uint64_t seed) {
            const bl::SamplerSpec spec = bl::SamplerSpec::parse(sampler);
            py::gil_scoped_release release;
            return bl::io::to_json(bl::conjecture_search(n, trials, spec, seed)).dump();
        },
        py::arg("n"), py::arg("trials"), py::arg("sampler") = "haar_gram", py::arg("seed") = 0);

    m.def(
        "selftest",
        [](bool quick, std::uint64_t seed) {
            py::gil_scoped_release release;
            const bl::SelftestReport r = bl::run_selftest(quick, seed);
            return std::make_pair(r.all_pass, bl::format_selftest(r));
        },
        py::arg("quick") = true, py::arg("seed") = 0);
}
