#include "airydet/rmt_mc.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "airydet/detasym.hpp"
#include "airydet/special_fn.hpp"

namespace airydet::rmt_mc {

// ---------------------------------------------------------------------
// Philox 4x64-10 block function.
// ---------------------------------------------------------------------
namespace {

constexpr std::uint64_t PHILOX_M0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t PHILOX_M1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t PHILOX_W0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t PHILOX_W1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

std::array<std::uint64_t, 4> philox_block(std::array<std::uint64_t, 2> key,
                                          std::array<std::uint64_t, 4> x) {
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(PHILOX_M0, x[0], hi0, lo0);
        mulhilo(PHILOX_M1, x[2], hi1, lo1);
        x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
        key[0] += PHILOX_W0;
        key[1] += PHILOX_W1;
    }
    return x;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_{seed, stream},
      ctr_{0, 0, 0, 0},
      pos_(4),
      cached_normal_(0.0),
      has_cached_(false) {}

void CounterRng::refill() {
    buf_ = philox_block(key_, ctr_);
    ++ctr_[0];
    if (ctr_[0] == 0) ++ctr_[1];  // 128-bit position counter
    pos_ = 0;
}

std::uint64_t CounterRng::next_u64() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

double CounterRng::next_double() {
    // 53-bit mantissa mapped to (0, 1]: never returns 0, safe under log
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
}

double CounterRng::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    double u1 = next_double();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(th);
    has_cached_ = true;
    return r * std::cos(th);
}

double CounterRng::next_gamma(double shape) {
    if (shape < 1.0) {
        throw std::invalid_argument("next_gamma: shape >= 1 required");
    }
    // Marsaglia-Tsang squeeze method
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

std::vector<double> sample_gue_spectrum(std::size_t n, std::uint64_t seed,
                                        std::uint64_t stream) {
    if (n < 2 || n > 10000) {
        throw std::invalid_argument("sample_gue_spectrum: need 2 <= n <= 1e4");
    }
    CounterRng rng(seed, stream);
    Eigen::VectorXd diag(n), sub(n - 1);
    const double s(std::sqrt(0.5));
    for (std::size_t i = 0; i < n; ++i) diag(i) = s * rng.next_normal();
    for (std::size_t k = 1; k < n; ++k) {
        // chi_{2(n-k)} / 2  ==  sqrt(Gamma(n-k, 1) / 2)
        sub(k - 1) = std::sqrt(0.5 * rng.next_gamma(static_cast<double>(n - k)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw detasym::numeric_error("sample_gue_spectrum: eigensolver failed");
    }
    return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

EdgeSample edge_rescale(const std::vector<double>& spectrum, std::size_t n) {
    double nn = static_cast<double>(n);
    double tau = std::sqrt(2.0) * std::pow(nn, 1.0 / 6.0);
    double center = std::sqrt(2.0 * nn);
    EdgeSample s;
    s.n_matrix = n;
    s.rescaled.resize(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        s.rescaled[i] = tau * (spectrum[i] - center);
    }
    std::sort(s.rescaled.begin(), s.rescaled.end(), std::greater<double>());
    return s;
}

double linear_statistic(const EdgeSample& sample,
                        const operator_disc::SymbolFunction& f, double alpha) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("linear_statistic: alpha > 0 required");
    }
    double cutoff = -(f.decay_scale * alpha + 20.0);
    double s = 0.0;
    for (double v : sample.rescaled) {
        if (v < cutoff) break;  // sorted descending; the rest is below decay
        s += f.eval(v / alpha);
    }
    return s;
}

McSummary run_mc(const operator_disc::SymbolFunction& f, double alpha,
                 std::size_t n, std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) {
        throw std::invalid_argument("run_mc: n_samples >= 1 required");
    }
    if (n < 2 || n > 10000) {
        // validate before the draw loop: workers may run on other threads,
        // where a thrown exception could not propagate to the caller
        throw std::invalid_argument("run_mc: need 2 <= n <= 1e4");
    }
    std::vector<double> vals(n_samples);
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            auto spec = sample_gue_spectrum(n, seed, j);
            auto edge = edge_rescale(spec, n);
            vals[j] = linear_statistic(edge, f, alpha);
        }
    };
    std::size_t nthreads = 1;
    if (const char* env = std::getenv("AIRYDET_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 1) nthreads = static_cast<std::size_t>(v);
    }
    if (nthreads <= 1 || n_samples < 2 * nthreads) {
        worker(0, n_samples);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n_samples + nthreads - 1) / nthreads;
        for (std::size_t t = 0; t < nthreads; ++t) {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(n_samples, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    // moments in fixed draw order (independent of the thread schedule)
    McSummary m;
    m.n_samples = n_samples;
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(n_samples);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : vals) {
        double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    double nf = static_cast<double>(n_samples);
    m.mean = mean;
    m.variance = n_samples > 1 ? m2 / (nf - 1.0) : 0.0;
    double sd = std::sqrt(m.variance);
    m.skewness = (sd > 0.0) ? (m3 / nf) / (sd * sd * sd) : 0.0;
    m.excess_kurtosis =
        (sd > 0.0) ? (m4 / nf) / (sd * sd * sd * sd) - 3.0 : 0.0;
    m.std_err_mean = std::sqrt(m.variance / nf);
    m.predicted_mean =
        std::pow(alpha, 1.5) * detasym::mean_integral(f);
    m.predicted_variance = detasym::variance_integral(f);
    return m;
}

namespace {

// sqrt(w)-symmetrized Airy kernel matrix S_ij = sqrt(w_i) K(x_i, x_j)
// sqrt(w_j) on the default grid; the symbol factor is applied per step.
struct KernelCache {
    std::vector<double> nodes;
    Eigen::MatrixXd s;
};

KernelCache build_kernel_cache(const operator_disc::SymbolFunction& f,
                               double alpha) {
    auto grid = operator_disc::default_airy_grid(f, alpha);
    const auto& x = grid.nodes;
    const auto& w = grid.weights;
    const std::size_t n = x.size();
    std::vector<double> ai(n), aip(n), sw(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto a = special_fn::airy_both(x[i]);
        ai[i] = a.ai;
        aip[i] = a.ai_prime;
        sw[i] = std::sqrt(w[i]);
    }
    KernelCache cache;
    cache.nodes = x;
    cache.s.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double k;
            if (std::abs(x[i] - x[j]) < 1e-6) {
                if (i == j) {
                    k = aip[i] * aip[i] - x[i] * ai[i] * ai[i];
                } else {
                    double mm = 0.5 * (x[i] + x[j]);
                    auto am = special_fn::airy_both(mm);
                    k = am.ai_prime * am.ai_prime - mm * am.ai * am.ai;
                }
            } else {
                k = (ai[i] * aip[j] - ai[j] * aip[i]) / (x[i] - x[j]);
            }
            cache.s(i, j) = sw[i] * k * sw[j];
        }
    }
    return cache;
}

}  // namespace

std::complex<double> char_function_log_det(
    const operator_disc::SymbolFunction& f, double s, double alpha) {
    double supf = std::max(f.sup_norm_neg, std::abs(f.eval(0.0)));
    if (!(std::abs(s) * supf < std::numbers::pi / 2.0)) {
        throw std::invalid_argument(
            "char_function_log_det: require |s| sup|f| < pi/2");
    }
    auto cache = build_kernel_cache(f, alpha);
    const std::size_t n = cache.nodes.size();

    // Homotopy 0 -> s in enough steps that the phase advances by well
    // under pi per step; the LU phase is principal per step and the
    // running branch is carried across steps.
    double mu_est =
        std::abs(s) * std::pow(alpha, 1.5) * std::abs(detasym::mean_integral(f));
    int steps = 1 + static_cast<int>(std::ceil(mu_est / 2.0));
    std::complex<double> log_phi(0.0, 0.0);
    double prev_im = 0.0;
    double branch = 0.0;
    Eigen::MatrixXcd m(n, n);
    for (int step = 1; step <= steps; ++step) {
        double sj = s * static_cast<double>(step) / steps;
        for (std::size_t i = 0; i < n; ++i) {
            double sf = sj * f.eval(cache.nodes[i] / alpha);
            std::complex<double> h(std::cos(sf) - 1.0, std::sin(sf));
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = h * cache.s(i, j);
            }
        }
        std::complex<double> ld = detasym::log_det_complex(m);
        double im = ld.imag() + branch;
        while (im - prev_im > std::numbers::pi) {
            branch -= 2.0 * std::numbers::pi;
            im -= 2.0 * std::numbers::pi;
        }
        while (im - prev_im < -std::numbers::pi) {
            branch += 2.0 * std::numbers::pi;
            im += 2.0 * std::numbers::pi;
        }
        prev_im = im;
        log_phi = std::complex<double>(ld.real(), im);
    }
    return log_phi;
}

std::complex<double> char_function_det(const operator_disc::SymbolFunction& f,
                                       double s, double alpha) {
    return std::exp(char_function_log_det(f, s, alpha));
}

}  // namespace airydet::rmt_mc
