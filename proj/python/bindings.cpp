#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qchar/characters.hpp"
#include "qchar/cli.hpp"
#include "qchar/toda.hpp"

namespace py = pybind11;
using namespace qchar;

namespace {

TruncSpec window(const std::tuple<int, int, int>& w) {
    return TruncSpec{std::get<0>(w), std::get<1>(w), std::get<2>(w), {}};
}

JSource source(const std::string& name) {
    if (name == "explicit") return [](int n, const RootVec& d) { return jd_explicit(n, d); };
    if (name == "gz") return [](int n, const RootVec& d) { return scalar_product_J(n, d); };
    if (name == "solve") return [](int n, const RootVec& d) { return toda_solve(n, d); };
    throw Error(ErrorKind::Parse, "source must be explicit, gz or solve");
}

}  // namespace

PYBIND11_MODULE(_qchar, m) {
    m.doc() = "Exact q-series for Whittaker vectors and principal-subspace characters";
    py::register_exception<Error>(m, "QcharError", PyExc_ValueError);

    m.def(
        "jd",
        [](int n, const RootVec& d, const std::string& src) { return termsum_to_json(source(src)(n, d)); },
        py::arg("n"), py::arg("d"), py::arg("source") = "explicit", "J_d as factored-term JSON");
    m.def(
        "fermionic_series",
        [](int n, const RootVec& d, int r, const std::tuple<int, int, int>& w) {
            return fermionic_sum_series(n, d, r, window(w)).to_json();
        },
        py::arg("n"), py::arg("d"), py::arg("r") = 0, py::arg("window") = std::make_tuple(4, -20, 60));
    m.def(
        "character",
        [](int n, int k, const std::string& method, const std::tuple<int, int, int>& w) {
            const CharSpec spec{n, k, window(w)};
            if (method == "fermionic") return char_fermionic(spec).to_json();
            if (method == "bosonic") return char_bosonic(spec).to_json();
            throw Error(ErrorKind::Parse, "method must be fermionic or bosonic");
        },
        py::arg("n"), py::arg("k"), py::arg("method") = "fermionic", py::arg("window") = std::make_tuple(4, -20, 60));
    m.def(
        "verify_eigen",
        [](int n, int cutoff, const std::string& src) { return verify_eigen(n, cutoff, source(src)).pass(); },
        py::arg("n"), py::arg("cutoff"), py::arg("source") = "explicit");
    m.def(
        "termsum_equal",
        [](const std::string& a, const std::string& b, int trials, std::uint64_t seed) {
            return termsum_equal(termsum_from_json(a), termsum_from_json(b), trials, seed).equal;
        },
        py::arg("a"), py::arg("b"), py::arg("trials") = 12, py::arg("seed") = 1);
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code;
            {
                py::gil_scoped_release release;
                code = run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "run a command line; returns (exit code, stdout, stderr)");
}
