#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "airydet/operator_disc.hpp"
#include "airydet/special_fn.hpp"
#include "doctest.h"

using airydet::special_fn::airy_ai;
using airydet::special_fn::airy_ai_prime;
using airydet::special_fn::airy_both;
using airydet::special_fn::hermite_pair;
using airydet::special_fn::hermite_wavefunctions;

namespace {

// Reference values computed with mpmath at 40 significant digits and
// rounded to the nearest double.  The x = 300 and x = 800 rows underflow
// the double range (Ai ~ 1e-1506, 1e-6553); they are stored as 0 and the
// checks degrade to a smallness assertion there.
struct AiryRef {
    double x;
    double ai;
    double aip;
};

constexpr AiryRef AIRY_TABLE[] = {
    {-3000.0, -0.068031441338026854, 1.8840642504158958},
    {-800.5, 0.10414555271358322, -0.56875226714452975},
    {-100.25, -0.12719366760756803, 1.2507654513462273},
    {-50.0, -0.16188142361232092, 0.96898983727674909},
    {-30.5, -0.0043336372887428654, -1.3256903303662555},
    {-20.0, -0.17640612707798469, 0.89286285673647124},
    {-12.25, -0.26764469882714230, 0.48087136842700445},
    {-9.5, 0.31910324771912820, -0.10809531881187124},
    {-9.0, -0.022133721547341404, -0.97566398092633159},
    {-8.75, -0.23823003845963551, -0.67385618612066860},
    {-8.5, -0.33029023763020888, -0.032313348284639136},
    {-5.0, 0.35076100902411432, 0.32719281855444314},
    {-2.0, 0.22740742820168558, 0.61825902074169104},
    {-1.0, 0.53556088329235212, -0.010160567116645209},
    {-0.5, 0.47572809161053959, -0.20408167033954739},
    {0.5, 0.23169360648083349, -0.22491053266468389},
    {1.0, 0.13529241631288142, -0.15914744129679321},
    {2.0, 0.034924130423274379, -0.053090384433653632},
    {3.25, 0.0041604546181172564, -0.0077926879267907211},
    {5.0, 0.00010834442813607442, -0.00024741389086846248},
    {8.5, 1.0997009755195507e-8, -3.2377254404476023e-8},
    {8.75, 5.2401142318917524e-9, -1.5646762027577949e-8},
    {9.0, 2.4711684308724898e-9, -7.4806413896589464e-9},
    {9.5, 5.3302637046174916e-10, -1.6566394593740666e-9},
    {12.0, 1.3931846888753608e-13, -4.8547365549853085e-13},
    {20.0, 1.6916728686705403e-27, -7.5863916257483550e-27},
    {50.0, 4.5849417240748285e-104, -3.2443318198287993e-103},
    {100.5, 1.7618526728011851e-293, -1.7666898127499586e-292},
    {300.0, 0.0, 0.0},
    {800.0, 0.0, 0.0},
};

constexpr double PI_NEG_QUARTER = 0.75112554446494248;  // pi^{-1/4}

}  // namespace

TEST_CASE("airy: reference table") {
    for (const auto& r : AIRY_TABLE) {
        auto v = airy_both(r.x);
        CAPTURE(r.x);
        if (r.ai == 0.0) {
            // double-underflow rows: only smallness is checkable
            CHECK(std::abs(v.ai) <= 1e-290);
            CHECK(std::abs(v.ai_prime) <= 1e-289);
            continue;
        }
        if (std::abs(r.x) <= 20.0) {
            CHECK(std::abs(v.ai - r.ai) <= 1e-12);
            CHECK(std::abs(v.ai_prime - r.aip) <= 1e-12);
        }
        if (r.x >= 1.0) {
            // decaying side: relative accuracy through the exponential
            CHECK(std::abs(v.ai - r.ai) <= 1e-10 * std::abs(r.ai));
            CHECK(std::abs(v.ai_prime - r.aip) <= 1e-10 * std::abs(r.aip));
        } else if (r.x <= -20.0) {
            // oscillatory far field: absolute accuracy on the amplitude
            // scale (|Ai| ~ |x|^{-1/4}, |Ai'| ~ |x|^{1/4})
            CHECK(std::abs(v.ai - r.ai) <= 1e-11);
            CHECK(std::abs(v.ai_prime - r.aip) <=
                  1e-11 * std::max(1.0, std::abs(r.aip)));
        }
    }
}

TEST_CASE("airy: scalar entry points agree with airy_both") {
    for (double x : {-100.25, -9.0, -1.0, 0.0, 0.5, 9.0, 12.0}) {
        auto v = airy_both(x);
        CHECK(airy_ai(x) == v.ai);
        CHECK(airy_ai_prime(x) == v.ai_prime);
    }
}

TEST_CASE("airy: ODE residual Ai'' = x Ai at random points") {
    // Ai'' from a 6th-order central difference of Ai'; h = 5e-3 balances
    // truncation (h^6 Ai^(7)) against cancellation in the stencil.
    const double h = 5e-3;
    std::uint64_t state = 0x9E3779B97F4A7C15ULL;
    auto next_x = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        double u = static_cast<double>(state >> 11) * 0x1p-53;
        return -30.0 + 60.0 * u;
    };
    for (int k = 0; k < 200; ++k) {
        double x = next_x();
        double d2 = (airy_ai_prime(x - 3 * h) - 9 * airy_ai_prime(x - 2 * h) +
                     45 * airy_ai_prime(x - h) - 45 * airy_ai_prime(x + h) +
                     9 * airy_ai_prime(x + 2 * h) - airy_ai_prime(x + 3 * h)) /
                    (-60.0 * h);
        CAPTURE(x);
        CHECK(std::abs(d2 - x * airy_ai(x)) <= 1e-9);
    }
}

TEST_CASE("airy: decay majorant Ai(x) <= e^{-x} for x >= 1") {
    for (double x = 1.0; x <= 40.0; x += 0.25) {
        double v = airy_ai(x);
        CHECK(v > 0.0);
        CHECK(v <= std::exp(-x));
    }
}

TEST_CASE("airy: series and asymptotic branches agree across the switch") {
    using airydet::special_fn::detail::asymptotic_branch;
    using airydet::special_fn::detail::series_branch;
    // overlap band around |x| = 9 where both evaluations hold
    for (double x = 8.6; x <= 9.4 + 1e-9; x += 0.05) {
        auto s = series_branch(x);
        auto a = asymptotic_branch(x);
        CAPTURE(x);
        CHECK(std::abs(s.ai - a.ai) <= 1e-11 * std::abs(a.ai));
        CHECK(std::abs(s.ai_prime - a.ai_prime) <=
              1e-11 * std::abs(a.ai_prime));

        auto sn = series_branch(-x);
        auto an = asymptotic_branch(-x);
        CHECK(std::abs(sn.ai - an.ai) <= 1e-11);
        CHECK(std::abs(sn.ai_prime - an.ai_prime) <= 3e-11);
    }
}

TEST_CASE("airy: domain guard") {
    CHECK_THROWS_AS((void)airy_ai(3000.5), std::domain_error);
    CHECK_THROWS_AS((void)airy_ai(-3000.5), std::domain_error);
    CHECK_THROWS_AS((void)airy_ai(std::nan("")), std::domain_error);
    CHECK_THROWS_AS((void)airy_ai(std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK(std::isfinite(airy_ai(3000.0)));
    CHECK(std::isfinite(airy_ai(-3000.0)));
}

TEST_CASE("hermite: ground state and small-n closed forms") {
    auto phi = hermite_wavefunctions(3, 0.7);
    double w = std::exp(-0.245);  // e^{-x^2/2} at x = 0.7
    CHECK(phi.size() == 3);
    CHECK(std::abs(phi[0] - PI_NEG_QUARTER * w) <= 1e-15);
    CHECK(std::abs(phi[1] - PI_NEG_QUARTER * std::sqrt(2.0) * 0.7 * w) <=
          1e-15);
    // phi_2 = pi^{-1/4} (2x^2 - 1) e^{-x^2/2} / sqrt(2)
    CHECK(std::abs(phi[2] -
                   PI_NEG_QUARTER * (2 * 0.49 - 1.0) / std::sqrt(2.0) * w) <=
          1e-15);
    CHECK(hermite_wavefunctions(1, 0.0)[0] ==
          doctest::Approx(PI_NEG_QUARTER).epsilon(1e-15));
}

TEST_CASE("hermite: parity phi_k(-x) = (-1)^k phi_k(x)") {
    auto plus = hermite_wavefunctions(40, 1.3);
    auto minus = hermite_wavefunctions(40, -1.3);
    for (std::size_t k = 0; k < 40; ++k) {
        double expect = (k % 2 == 0) ? plus[k] : -plus[k];
        CHECK(minus[k] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("hermite: orthonormality at n = 50") {
    // Gauss-Legendre on [-30, 30] resolves phi_i phi_j exactly enough:
    // the integrand is polynomial * e^{-x^2} and has decayed to ~1e-390
    // at the window edge.
    const std::size_t m = 1200;
    std::vector<double> nodes, weights;
    airydet::operator_disc::gauss_legendre(m, nodes, weights);
    const std::size_t n = 50;
    std::vector<std::vector<double>> phi(m);
    std::vector<double> w(m);
    for (std::size_t q = 0; q < m; ++q) {
        double x = 30.0 * nodes[q];
        w[q] = 30.0 * weights[q];
        phi[q] = hermite_wavefunctions(n, x);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < m; ++q) {
                s += w[q] * phi[q][i] * phi[q][j];
            }
            double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(s - target));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("hermite: no overflow at large n and |x| <= sqrt(4 n)") {
    for (double x : {-80.0, -40.0, 0.0, 40.0, 80.0}) {
        auto phi = hermite_wavefunctions(2000, x);
        for (double v : phi) CHECK(std::isfinite(v));
    }
    // n_max cap: sqrt(4 * 5000) ~ 141
    auto top = hermite_wavefunctions(5000, 141.0);
    for (double v : top) CHECK(std::isfinite(v));
    CHECK_THROWS_AS((void)hermite_wavefunctions(0, 1.0), std::domain_error);
    CHECK_THROWS_AS((void)hermite_wavefunctions(5001, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS((void)hermite_wavefunctions(10, std::nan("")),
                    std::domain_error);
}

TEST_CASE("hermite: pair evaluation matches the full recurrence") {
    for (std::size_t n : {std::size_t{1}, std::size_t{17}, std::size_t{300},
                          std::size_t{2000}}) {
        for (double x : {-25.0, -3.7, 0.0, 1.1, 25.0}) {
            auto all = hermite_wavefunctions(n + 1, x);
            double pm1 = 0.0, pn = 0.0;
            hermite_pair(n, x, pm1, pn);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(pm1 == all[n - 1]);
            CHECK(pn == all[n]);
        }
    }
}
