#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "airydet/cli_io.hpp"
#include "airydet/detasym.hpp"
#include "airydet/kernels.hpp"
#include "airydet/operator_disc.hpp"
#include "airydet/rmt_mc.hpp"
#include "airydet/special_fn.hpp"

namespace py = pybind11;

using namespace airydet;

namespace {

operator_disc::SymbolFunction symbol_from(const std::string& family, double t,
                                          double shift) {
    cli_io::SymbolSpec spec;
    spec.family = family;
    spec.t = t;
    spec.shift = shift;
    return cli_io::make_symbol(spec);
}

}  // namespace

PYBIND11_MODULE(_airydet, m) {
    m.doc() =
        "Fredholm determinants of Airy-kernel operators, asymptotic "
        "constants, and GUE edge statistics (C++ core)";
    m.attr("__version__") = cli_io::VERSION;

    m.def("airy_ai", &special_fn::airy_ai, py::arg("x"), "Ai(x)");
    m.def("airy_ai_prime", &special_fn::airy_ai_prime, py::arg("x"),
          "Ai'(x)");
    m.def(
        "airy_kernel",
        [](double x, double y) { return kernels::airy_kernel(x, y).value; },
        py::arg("x"), py::arg("y"),
        "Airy kernel (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y)");
    m.def("edge_scaled_kernel", &kernels::edge_scaled_kernel, py::arg("n"),
          py::arg("x"), py::arg("y"),
          "Edge-rescaled finite-n Christoffel-Darboux kernel");

    m.def(
        "log_det",
        [](const std::string& family, double t, double shift, double alpha,
           std::size_t refine) {
            auto f = symbol_from(family, t, shift);
            auto grid = operator_disc::default_airy_grid(f, alpha, refine);
            auto op = operator_disc::discretize_airy_operator(f, alpha, grid);
            return detasym::log_det(op);
        },
        py::arg("family"), py::arg("t"), py::arg("shift"), py::arg("alpha"),
        py::arg("refine") = 1,
        "log det(I + A_alpha(f)) on the default grid");

    m.def(
        "asymptotic_constants",
        [](const std::string& family, double t, double shift) {
            auto c = detasym::asymptotic_constants(symbol_from(family, t, shift));
            py::dict d;
            d["c1"] = c.c1;
            d["c2"] = c.c2;
            d["variance"] = c.variance;
            d["quad_error_est"] = c.quad_error_est;
            return d;
        },
        py::arg("family"), py::arg("t"), py::arg("shift"),
        "c1, c2, limiting variance, and a quadrature error estimate");

    m.def(
        "wiener_hopf_c2",
        [](const std::string& family, double t, double shift) {
            auto r = detasym::wiener_hopf_c2_check(symbol_from(family, t, shift));
            py::dict d;
            d["value"] = r.value;
            d["value_half"] = r.value_half;
            d["conv_est"] = r.conv_est;
            return d;
        },
        py::arg("family"), py::arg("t"), py::arg("shift"),
        "c2 through the Wiener-Hopf trace correction");

    m.def(
        "run_mc",
        [](const std::string& family, double t, double shift, double alpha,
           std::size_t n_matrix, std::size_t n_samples, std::uint64_t seed) {
            auto s = rmt_mc::run_mc(symbol_from(family, t, shift), alpha,
                                    n_matrix, n_samples, seed);
            py::dict d;
            d["n_samples"] = s.n_samples;
            d["mean"] = s.mean;
            d["variance"] = s.variance;
            d["skewness"] = s.skewness;
            d["excess_kurtosis"] = s.excess_kurtosis;
            d["std_err_mean"] = s.std_err_mean;
            d["predicted_mean"] = s.predicted_mean;
            d["predicted_variance"] = s.predicted_variance;
            return d;
        },
        py::arg("family"), py::arg("t"), py::arg("shift"), py::arg("alpha"),
        py::arg("n_matrix") = 400, py::arg("n_samples") = 2000,
        py::arg("seed") = cli_io::DEFAULT_SEED,
        "GUE Monte Carlo moment summary of the edge linear statistic");

    m.def(
        "char_function_log",
        [](const std::string& family, double t, double shift, double s,
           double alpha) {
            return rmt_mc::char_function_log_det(symbol_from(family, t, shift),
                                                 s, alpha);
        },
        py::arg("family"), py::arg("t"), py::arg("shift"), py::arg("s"),
        py::arg("alpha"),
        "log E[exp(is X_alpha)] as a Fredholm determinant (continuous "
        "branch)");

    m.def("default_seed", [] { return cli_io::DEFAULT_SEED; });
}
