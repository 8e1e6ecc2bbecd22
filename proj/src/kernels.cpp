#include "airydet/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "airydet/operator_disc.hpp"
#include "airydet/special_fn.hpp"

namespace airydet::kernels {

namespace {
constexpr double DIAG_DELTA = 1e-6;
}

KernelEval airy_kernel(double x, double y) {
    using special_fn::airy_both;
    if (std::abs(x - y) < DIAG_DELTA) {
        double m = 0.5 * (x + y);
        auto a = airy_both(m);
        return {a.ai_prime * a.ai_prime - m * a.ai * a.ai,
                Regime::diagonal_limit};
    }
    auto ax = airy_both(x);
    auto ay = airy_both(y);
    return {(ax.ai * ay.ai_prime - ay.ai * ax.ai_prime) / (x - y),
            Regime::off_diagonal};
}

double airy_kernel_integral_check(double x, double y, double z_max,
                                  std::size_t n_nodes) {
    if (z_max < 30.0) {
        throw std::domain_error("airy_kernel_integral_check: z_max >= 30");
    }
    if (n_nodes < 200) {
        throw std::domain_error("airy_kernel_integral_check: n_nodes >= 200");
    }
    auto grid = operator_disc::build_grid({0.0, z_max}, n_nodes,
                                          operator_disc::Rule::composite_gl);
    double s = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        double z = grid.nodes[i];
        s += grid.weights[i] * special_fn::airy_ai(x + z) *
             special_fn::airy_ai(y + z);
    }
    return s;
}

namespace {

// Direct sum over phi_i(x) phi_i(y); used for small n and as the cross
// check of the CD form.
double hermite_kernel_direct(std::size_t n, double x, double y) {
    auto px = special_fn::hermite_wavefunctions(n, x);
    auto py = special_fn::hermite_wavefunctions(n, y);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += px[i] * py[i];
    return s;
}

// Christoffel-Darboux two-term form,
//   K_n(x,y) = b_n (phi_n(x) phi_{n-1}(y) - phi_{n-1}(x) phi_n(y)) / (x-y),
// b_n = sqrt(n/2).  On the diagonal the raising/lowering relations
//   phi_n'     = -x phi_n     + sqrt(2n) phi_{n-1}
//   phi_{n-1}' =  x phi_{n-1} - sqrt(2n) phi_n
// collapse the limit to
//   K_n(x,x) = b_n (sqrt(2n)(phi_n^2 + phi_{n-1}^2) - 2x phi_n phi_{n-1}).
double hermite_kernel_cd(std::size_t n, double x, double y) {
    double bn = std::sqrt(0.5 * static_cast<double>(n));
    double pxm, pxn, pym, pyn;
    if (std::abs(x - y) < DIAG_DELTA) {
        double m = 0.5 * (x + y);
        special_fn::hermite_pair(n, m, pxm, pxn);
        double s2n = std::sqrt(2.0 * static_cast<double>(n));
        return bn * (s2n * (pxn * pxn + pxm * pxm) - 2.0 * m * pxn * pxm);
    }
    special_fn::hermite_pair(n, x, pxm, pxn);
    special_fn::hermite_pair(n, y, pym, pyn);
    return bn * (pxn * pym - pxm * pyn) / (x - y);
}

}  // namespace

double hermite_kernel(std::size_t n, double x, double y) {
    if (n == 0 || n > 5000) {
        throw std::domain_error("hermite_kernel: need 0 < n <= 5000");
    }
    if (n <= 64 && std::abs(x - y) >= DIAG_DELTA) {
        return hermite_kernel_direct(n, x, y);
    }
    if (n <= 64) {
        // small-n diagonal: direct sum at the midpoint is exact enough
        double m = 0.5 * (x + y);
        return hermite_kernel_direct(n, m, m);
    }
    return hermite_kernel_cd(n, x, y);
}

double edge_scaled_kernel(std::size_t n, double x, double y) {
    if (n < 2) {
        throw std::domain_error("edge_scaled_kernel: need n >= 2");
    }
    double nn = static_cast<double>(n);
    double tau = std::sqrt(2.0) * std::pow(nn, 1.0 / 6.0);
    double c = std::sqrt(2.0 * nn);
    return hermite_kernel(n, x / tau + c, y / tau + c) / tau;
}

}  // namespace airydet::kernels
