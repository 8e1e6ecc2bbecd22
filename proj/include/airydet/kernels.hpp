#pragma once

#include <cstddef>

namespace airydet::kernels {

enum class Regime { off_diagonal, diagonal_limit };

struct KernelEval {
    double value;
    Regime regime;
};

// Airy kernel (Ai(x)Ai'(y) - Ai(y)Ai'(x)) / (x - y).  Within |x - y| <
// 1e-6 the quotient cancels catastrophically, so the diagonal-limit form
// Ai'(m)^2 - m Ai(m)^2 at the midpoint m = (x+y)/2 is used instead.
KernelEval airy_kernel(double x, double y);

// Truncated quadrature of the integral representation
// int_0^zmax Ai(x+z) Ai(y+z) dz; test oracle for airy_kernel.
// Requires z_max >= 30 and n_nodes >= 200.
double airy_kernel_integral_check(double x, double y, double z_max,
                                  std::size_t n_nodes);

// Finite-n Christoffel-Darboux kernel sum_{i<n} phi_i(x) phi_i(y) for the
// oscillator functions.  Two-term CD form for n > 64, direct sum below
// (both paths are cross-tested); the same diagonal rule as airy_kernel.
double hermite_kernel(std::size_t n, double x, double y);

// Edge rescaling of hermite_kernel:
//   (1/tau) K_n(x/tau + sqrt(2n), y/tau + sqrt(2n)),  tau = 2^{1/2} n^{1/6};
// converges to airy_kernel as n grows.
double edge_scaled_kernel(std::size_t n, double x, double y);

}  // namespace airydet::kernels
