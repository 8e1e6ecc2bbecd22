#pragma once

#include <vector>

namespace airydet::special_fn {

// Value pair for the Airy function and its derivative at one point.
struct AiryValue {
    double ai;
    double ai_prime;
};

// Ai(x).  Maclaurin series in compensated (double-double) arithmetic for
// |x| <= 9, asymptotic expansions beyond; absolute error <= 1e-12 on
// [-20, 20] and relative error <= 1e-10 in the decaying regime.
// Throws std::domain_error for non-finite x or |x| > 3000.
double airy_ai(double x);

// Ai'(x), same branch structure and accuracy targets as airy_ai.
double airy_ai_prime(double x);

// Both values with a single branch dispatch (the kernel assembly hot path).
AiryValue airy_both(double x);

// Orthonormal oscillator functions phi_0(x) .. phi_{n_max-1}(x),
// phi_k(x) = H_k(x) e^{-x^2/2} / sqrt(2^k k! sqrt(pi)),
// by the absorbed-weight three-term recurrence with scale renormalization,
// so no intermediate overflow occurs for |x| <= sqrt(4 n_max).
// Throws std::domain_error if n_max == 0 or n_max > 5000 or x non-finite.
std::vector<double> hermite_wavefunctions(std::size_t n_max, double x);

// Last two oscillator functions (phi_{n-1}, phi_n) without materializing
// the whole sequence; used by the Christoffel-Darboux kernel form.
void hermite_pair(std::size_t n, double x, double& phi_nm1, double& phi_n);

namespace detail {

// The two evaluation branches behind airy_both, exposed so the test suite
// can cross-check them against each other on the band around |x| = 9
// where both are accurate.  series_branch: compensated Maclaurin series
// (usable to about |x| = 9.5); asymptotic_branch: scaled expansions
// (usable down to about |x| = 8.5).
AiryValue series_branch(double x);
AiryValue asymptotic_branch(double x);

}  // namespace detail

}  // namespace airydet::special_fn
