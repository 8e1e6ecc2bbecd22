#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "airydet/kernels.hpp"
#include "airydet/operator_disc.hpp"
#include "airydet/special_fn.hpp"
#include "doctest.h"

using airydet::kernels::airy_kernel;
using airydet::kernels::airy_kernel_integral_check;
using airydet::kernels::edge_scaled_kernel;
using airydet::kernels::hermite_kernel;
using airydet::kernels::Regime;
using airydet::operator_disc::build_grid;
using airydet::operator_disc::Rule;

TEST_CASE("airy kernel: exact diagonal value at the origin") {
    // K(0,0) = Ai'(0)^2, Ai'(0) = -3^{-1/3} / Gamma(1/3)
    auto k = airy_kernel(0.0, 0.0);
    CHECK(k.regime == Regime::diagonal_limit);
    double aip0 = -0.25881940379280680;
    CHECK(std::abs(k.value - aip0 * aip0) <= 1e-15);
}

TEST_CASE("airy kernel: symmetric bit for bit") {
    for (double x : {-7.3, -2.0, 0.1, 1.7, 4.9}) {
        for (double y : {-5.5, -0.4, 2.2}) {
            CHECK(airy_kernel(x, y).value == airy_kernel(y, x).value);
        }
    }
}

TEST_CASE("airy kernel: regime flag") {
    CHECK(airy_kernel(1.0, 1.0 + 1e-7).regime == Regime::diagonal_limit);
    CHECK(airy_kernel(1.0, 1.0 + 1e-5).regime == Regime::off_diagonal);
}

TEST_CASE("airy kernel: matches the integral representation") {
    // K(x,y) = int_0^inf Ai(x+z) Ai(y+z) dz, truncated where Ai^2 < 1e-16
    struct P {
        double x, y;
    };
    for (auto [x, y] : {P{0.0, 0.0}, P{-2.0, 1.0}, P{-5.0, -5.0},
                        P{3.0, 0.5}, P{-6.0, 2.0}}) {
        double closed = airy_kernel(x, y).value;
        double integral = airy_kernel_integral_check(x, y, 46.0, 1500);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(std::abs(closed - integral) <= 1e-9);
    }
    CHECK_THROWS_AS((void)airy_kernel_integral_check(0, 0, 20.0, 1500),
                    std::domain_error);
    CHECK_THROWS_AS((void)airy_kernel_integral_check(0, 0, 46.0, 100),
                    std::domain_error);
}

TEST_CASE("airy kernel: diagonal limit is continuous") {
    // value just outside the quotient cutoff vs the midpoint form
    for (int i = 0; i < 50; ++i) {
        double x = -10.0 + 15.0 * i / 49.0;
        double diag = airy_kernel(x, x).value;
        double off = airy_kernel(x, x + 1.01e-6).value;
        CAPTURE(x);
        CHECK(std::abs(diag - off) <= 1e-6);
    }
}

TEST_CASE("airy kernel: positive semidefinite on a quadrature grid") {
    auto grid = build_grid({-15.0, 8.0}, 260, Rule::composite_gl);
    const std::size_t n = grid.nodes.size();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = std::sqrt(grid.weights[i]) *
                      airy_kernel(grid.nodes[i], grid.nodes[j]).value *
                      std::sqrt(grid.weights[j]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m,
                                                      Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("hermite kernel: trace equals n") {
    for (std::size_t n : {std::size_t{20}, std::size_t{100}}) {
        double lim = std::sqrt(2.0 * static_cast<double>(n)) + 6.0;
        auto grid = build_grid({-lim, lim}, 1600, Rule::composite_gl);
        double tr = 0.0;
        for (std::size_t q = 0; q < grid.nodes.size(); ++q) {
            tr += grid.weights[q] *
                  hermite_kernel(n, grid.nodes[q], grid.nodes[q]);
        }
        CAPTURE(n);
        CHECK(std::abs(tr - static_cast<double>(n)) <= 1e-6);
    }
}

TEST_CASE("hermite kernel: reproducing property") {
    const std::size_t n = 20;
    double lim = std::sqrt(2.0 * 20.0) + 6.0;
    auto grid = build_grid({-lim, lim}, 1200, Rule::composite_gl);
    struct P {
        double x, y;
    };
    for (auto [x, y] : {P{0.0, 0.0}, P{1.3, -2.1}, P{-4.0, 4.0}}) {
        double conv = 0.0;
        for (std::size_t q = 0; q < grid.nodes.size(); ++q) {
            conv += grid.weights[q] * hermite_kernel(n, x, grid.nodes[q]) *
                    hermite_kernel(n, grid.nodes[q], y);
        }
        CAPTURE(x);
        CAPTURE(y);
        CHECK(std::abs(conv - hermite_kernel(n, x, y)) <= 1e-6);
    }
}

TEST_CASE("hermite kernel: Christoffel-Darboux path matches the direct sum") {
    // n = 80 dispatches to the two-term CD form; re-derive the kernel from
    // the definition sum_{k<n} phi_k(x) phi_k(y) independently.
    const std::size_t n = 80;
    for (double x : {-9.0, -1.1, 0.0, 2.6, 9.5}) {
        for (double y : {-9.0, -1.1, 0.0, 2.6, 9.5}) {
            auto px = airydet::special_fn::hermite_wavefunctions(n, x);
            auto py = airydet::special_fn::hermite_wavefunctions(n, y);
            double direct = 0.0;
            for (std::size_t k = 0; k < n; ++k) direct += px[k] * py[k];
            double cd = hermite_kernel(n, x, y);
            CAPTURE(x);
            CAPTURE(y);
            CHECK(std::abs(cd - direct) <=
                  1e-10 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("hermite kernel: dispatcher continuity at the path switch") {
    // same point through the n = 64 direct path and the n = 65 CD path
    // differs exactly by the phi_64 term
    double x = 0.9, y = -1.4;
    auto px = airydet::special_fn::hermite_wavefunctions(65, x);
    auto py = airydet::special_fn::hermite_wavefunctions(65, y);
    double k64 = hermite_kernel(64, x, y);
    double k65 = hermite_kernel(65, x, y);
    CHECK(std::abs((k65 - k64) - px[64] * py[64]) <= 1e-13);
}

TEST_CASE("edge-scaled kernel: symmetry and convergence to the airy kernel") {
    CHECK(edge_scaled_kernel(150, 0.7, -1.9) ==
          edge_scaled_kernel(150, -1.9, 0.7));
    struct P {
        double x, y;
    };
    for (auto [x, y] : {P{0.0, 0.0}, P{-2.0, 1.0}, P{1.5, 1.5}}) {
        double a = airy_kernel(x, y).value;
        double e100 = std::abs(edge_scaled_kernel(100, x, y) - a);
        double e400 = std::abs(edge_scaled_kernel(400, x, y) - a);
        CAPTURE(x);
        CAPTURE(y);
        CHECK(e400 < e100);
        CHECK(e400 <= 2e-2);
    }
}

TEST_CASE("kernel guards") {
    CHECK_THROWS_AS((void)hermite_kernel(0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)hermite_kernel(5001, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)edge_scaled_kernel(1, 0.0, 0.0), std::domain_error);
}
