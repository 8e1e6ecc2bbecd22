#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "airydet/operator_disc.hpp"

namespace airydet::rmt_mc {

// Counter-based RNG (Philox 4x64, 10 rounds).  A (seed, stream) pair
// addresses an independent substream; outputs depend only on (seed,
// stream, position), so any parallel schedule that assigns stream = draw
// index reproduces the serial run bit for bit.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double next_double();             // uniform on (0, 1]
    double next_normal();             // standard normal (Box-Muller pair)
    double next_gamma(double shape);  // Gamma(shape, 1), shape >= 1

  private:
    void refill();
    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_;
    std::array<std::uint64_t, 4> buf_;
    int pos_;
    double cached_normal_;
    bool has_cached_;
};

struct EdgeSample {
    std::size_t n_matrix = 0;
    std::vector<double> rescaled;  // sorted descending
    std::uint64_t seed = 0;
};

struct McSummary {
    std::size_t n_samples = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double std_err_mean = 0.0;
    double predicted_mean = 0.0;
    double predicted_variance = 0.0;
};

// One GUE spectrum (ascending) in the e^{-x^2} weight convention
// (support ~ (-sqrt(2N), sqrt(2N))), via the beta=2 tridiagonal model:
// diagonal N(0, 1/2), off-diagonal sqrt(Gamma(N-k)/2).
std::vector<double> sample_gue_spectrum(std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream = 0);

// Edge rescaling lambda -> 2^{1/2} n^{1/6} (lambda - sqrt(2n)), sorted
// descending.
EdgeSample edge_rescale(const std::vector<double>& spectrum, std::size_t n);

// sum_i f(rescaled_i / alpha), truncated where the symbol has decayed
// (rescaled_i >= -(decay_scale * alpha + 20)).
double linear_statistic(const EdgeSample& sample,
                        const operator_disc::SymbolFunction& f, double alpha);

// Full Monte Carlo: n_samples independent draws on substreams 0..n-1,
// moment summary, and the limiting predictions
//   mean     = (alpha^{3/2}/pi) int_0^inf sqrt(x) f(-x) dx,
//   variance = int_0^inf x k(x)^2 dx  (k the cosine transform of f(-y^2)).
// Honors AIRYDET_THREADS for the draw loop; the reduction order is fixed,
// so results are identical for any thread count.
McSummary run_mc(const operator_disc::SymbolFunction& f, double alpha,
                 std::size_t n, std::size_t n_samples, std::uint64_t seed);

// log phi(s), phi(s) = det(I + A_alpha(h)) with h = e^{isf} - 1, by
// complex LU on the default grid.  The imaginary part is returned on the
// branch continuous in s (unwrapped along a short homotopy 0 -> s, so it
// is not folded into (-pi, pi] when |Im log phi| grows past pi).
// Requires |s| * sup|f| < pi/2 so that 1 + h stays in the right half
// plane pointwise.
std::complex<double> char_function_log_det(
    const operator_disc::SymbolFunction& f, double s, double alpha);

// exp(char_function_log_det(f, s, alpha)).
std::complex<double> char_function_det(const operator_disc::SymbolFunction& f,
                                       double s, double alpha);

}  // namespace airydet::rmt_mc
