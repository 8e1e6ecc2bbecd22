#include "airydet/special_fn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace airydet::special_fn {

namespace {

// ---------------------------------------------------------------------
// Compensated (double-double) arithmetic, Dekker/Knuth style.  The value
// is hi + lo with |lo| <= ulp(hi)/2.  Only the handful of operations the
// Airy series needs are provided.
// ---------------------------------------------------------------------
struct dd {
    double hi;
    double lo;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
    double q0 = a.hi / b;
    dd p = two_prod(q0, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    return quick_two_sum(q0, r / b);
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, {-b.hi, -b.lo}); }

// sqrt of a double to double-double accuracy (one Newton correction).
inline dd dd_sqrt(double x) {
    double s = std::sqrt(x);
    dd s2 = two_prod(s, s);
    double corr = ((x - s2.hi) - s2.lo) / (2.0 * s);
    return quick_two_sum(s, corr);
}

// Ai(0) and Ai'(0): 3^{-2/3}/Gamma(2/3) and -3^{-1/3}/Gamma(1/3),
// stored as double-double constants.
constexpr double AI0_HI = 0.3550280538878172;
constexpr double AI0_LO = 2.05233632436212e-17;
constexpr double AIP0_HI = -0.2588194037928068;
constexpr double AIP0_LO = 2.522243111610832e-17;

constexpr double TWO_PI_HI = 6.283185307179586;
constexpr double TWO_PI_LO = 2.4492935982947064e-16;

constexpr double SERIES_CUT = 9.0;   // |x| <= 9: Maclaurin in dd arithmetic
constexpr double GUARD = 3000.0;     // argument guard

// ---------------------------------------------------------------------
// Maclaurin branch.  Ai = c1*f + c2*g with f'' = xf, g'' = xg:
//   f(x) = sum 3^k (1/3)_k x^{3k} / (3k)!
//   g(x) = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!
// Term recurrences (t = x^3):
//   f:  a_{k+1} = a_k t / ((3k+2)(3k+3))        a_0 = 1
//   g:  b_{k+1} = b_k t / ((3k+3)(3k+4))        b_0 = x
//   f': c_{k+1} = c_k t / ((3k)(3k+2)), k>=1    c_1 = x^2/2
//   g': d_{k+1} = d_k t / ((3k+1)(3k+3))        d_0 = 1
// The partial sums cancel heavily near x = +9 (terms reach ~e^{18} while
// Ai(9) ~ 2.5e-9), which is exactly why the accumulation runs in
// double-double: the 1e-32 working epsilon leaves ~1e-15 relative error
// after the worst cancellation in this range.
// ---------------------------------------------------------------------
AiryValue airy_series(double x) {
    dd x_dd = {x, 0.0};
    dd x2 = two_prod(x, x);
    dd t = dd_mul(x2, x_dd);  // x^3

    dd f = {1.0, 0.0}, a = {1.0, 0.0};
    dd g = x_dd, b = x_dd;
    dd fp = {0.0, 0.0}, c = dd_div_d(x2, 2.0);
    dd gp = {1.0, 0.0}, d = {1.0, 0.0};

    for (int k = 0; k < 120; ++k) {
        double k3 = 3.0 * k;
        a = dd_div_d(dd_mul(a, t), (k3 + 2.0) * (k3 + 3.0));
        b = dd_div_d(dd_mul(b, t), (k3 + 3.0) * (k3 + 4.0));
        d = dd_div_d(dd_mul(d, t), (k3 + 1.0) * (k3 + 3.0));
        if (k >= 1) {
            c = dd_div_d(dd_mul(c, t), k3 * (k3 + 2.0));
        }
        f = dd_add(f, a);
        g = dd_add(g, b);
        fp = dd_add(fp, c);
        gp = dd_add(gp, d);
        if (std::abs(a.hi) < 1e-40 && std::abs(b.hi) < 1e-40 &&
            std::abs(c.hi) < 1e-40 && std::abs(d.hi) < 1e-40) {
            break;
        }
    }
    dd c1 = {AI0_HI, AI0_LO};
    dd c2 = {AIP0_HI, AIP0_LO};
    dd ai = dd_add(dd_mul(c1, f), dd_mul(c2, g));
    dd aip = dd_add(dd_mul(c1, fp), dd_mul(c2, gp));
    return {ai.hi + ai.lo, aip.hi + aip.lo};
}

// ---------------------------------------------------------------------
// Asymptotic branches (DLMF 9.7).  u_0 = 1,
//   u_{k+1} = u_k (6k+1)(6k+3)(6k+5) / (216 (k+1)(2k+1)),
//   v_k = (6k+1)/(1-6k) u_k.
// Decaying side (x > 9), zeta = (2/3) x^{3/2}:
//   Ai  ~  e^{-zeta} / (2 sqrt(pi) x^{1/4}) * sum (-1)^k u_k zeta^{-k}
//   Ai' ~ -x^{1/4} e^{-zeta} / (2 sqrt(pi)) * sum (-1)^k v_k zeta^{-k}
// Oscillatory side (x < -9), z = -x, zeta = (2/3) z^{3/2}, w = zeta - pi/4:
//   Ai  ~ (cos w * sum (-1)^k u_{2k} zeta^{-2k}
//          + sin w * sum (-1)^k u_{2k+1} zeta^{-2k-1}) / (sqrt(pi) z^{1/4})
//   Ai' ~ z^{1/4}/sqrt(pi) * (sin w * sum (-1)^k v_{2k} zeta^{-2k}
//          - cos w * sum (-1)^k v_{2k+1} zeta^{-2k-1})
// Truncation at the smallest term; its size is ~e^{-2 zeta}, below 1e-15
// relative for zeta >= 18 (i.e. |x| >= 9).
// ---------------------------------------------------------------------
constexpr int N_ASY = 24;

struct AsyTables {
    double u[N_ASY];
    double v[N_ASY];
    AsyTables() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 0; k + 1 < N_ASY; ++k) {
            u[k + 1] = u[k] * (6.0 * k + 1.0) * (6.0 * k + 3.0) *
                       (6.0 * k + 5.0) / (216.0 * (k + 1.0) * (2.0 * k + 1.0));
            v[k + 1] = u[k + 1] * (6.0 * (k + 1) + 1.0) / (1.0 - 6.0 * (k + 1));
        }
    }
};
const AsyTables asy{};

// zeta = (2/3) x^{3/2} in double-double; the oscillatory branch needs the
// phase to full precision before range reduction.
dd zeta_dd(double x) {
    dd r = dd_mul_d(dd_mul(dd_sqrt(x), {x, 0.0}), 2.0);
    return dd_div_d(r, 3.0);
}

// Sum sum (-1)^k w_k r^k over the n supplied coefficients, truncated at
// the smallest term (optimal truncation of the divergent tail).
double asy_sum(const double* w, int n, double inv_zeta) {
    double s = w[0], term = 1.0, prev = std::numeric_limits<double>::max();
    for (int k = 1; k < n; ++k) {
        term *= inv_zeta;
        double t = w[k] * term;
        if (std::abs(t) >= prev) break;  // divergent tail reached
        s += (k & 1) ? -t : t;
        prev = std::abs(t);
        if (prev < 1e-18 * std::abs(s)) break;
    }
    return s;
}

AiryValue airy_asy_pos(double x) {
    dd zeta = zeta_dd(x);
    double inv_zeta = 1.0 / zeta.hi;
    double root4 = std::sqrt(std::sqrt(x));
    // e^{-zeta}: split the dd exponent to keep the relative error at eps
    // instead of eps*zeta.
    double e = std::exp(-zeta.hi) * std::exp(-zeta.lo);
    double pre = e / (2.0 * std::sqrt(M_PI));
    double ai = pre / root4 * asy_sum(asy.u, N_ASY, inv_zeta);
    double aip = -pre * root4 * asy_sum(asy.v, N_ASY, inv_zeta);
    return {ai, aip};
}

AiryValue airy_asy_neg(double x) {
    double z = -x;
    dd zeta = zeta_dd(z);
    double inv_zeta = 1.0 / zeta.hi;
    // Range-reduce the phase mod 2*pi in dd so cos/sin see an argument with
    // full absolute accuracy even when zeta ~ 1e5.
    double n = std::round(zeta.hi / TWO_PI_HI);
    dd red = dd_sub(zeta, dd_add(two_prod(TWO_PI_HI, n), two_prod(TWO_PI_LO, n)));
    double w = (red.hi + red.lo) - M_PI / 4.0;
    double cw = std::cos(w), sw = std::sin(w);

    double even_u[N_ASY / 2], odd_u[N_ASY / 2], even_v[N_ASY / 2],
        odd_v[N_ASY / 2];
    for (int k = 0; k < N_ASY / 2; ++k) {
        even_u[k] = asy.u[2 * k];
        odd_u[k] = asy.u[2 * k + 1];
        even_v[k] = asy.v[2 * k];
        odd_v[k] = asy.v[2 * k + 1];
    }
    double iz2 = inv_zeta * inv_zeta;
    double su_even = asy_sum(even_u, N_ASY / 2, iz2);
    double su_odd = asy_sum(odd_u, N_ASY / 2, iz2) * inv_zeta;
    double sv_even = asy_sum(even_v, N_ASY / 2, iz2);
    double sv_odd = asy_sum(odd_v, N_ASY / 2, iz2) * inv_zeta;

    double root4 = std::sqrt(std::sqrt(z));
    double pre = 1.0 / (std::sqrt(M_PI) * root4);
    double ai = pre * (cw * su_even + sw * su_odd);
    double aip = root4 / std::sqrt(M_PI) * (sw * sv_even - cw * sv_odd);
    return {ai, aip};
}

void check_arg(double x) {
    if (!std::isfinite(x) || std::abs(x) > GUARD) {
        throw std::domain_error("airy: argument must be finite with |x| <= 3000");
    }
}

}  // namespace

AiryValue airy_both(double x) {
    check_arg(x);
    if (std::abs(x) <= SERIES_CUT) return airy_series(x);
    return x > 0.0 ? airy_asy_pos(x) : airy_asy_neg(x);
}

namespace detail {

AiryValue series_branch(double x) {
    check_arg(x);
    return airy_series(x);
}

AiryValue asymptotic_branch(double x) {
    check_arg(x);
    return x > 0.0 ? airy_asy_pos(x) : airy_asy_neg(x);
}

}  // namespace detail

double airy_ai(double x) { return airy_both(x).ai; }

double airy_ai_prime(double x) { return airy_both(x).ai_prime; }

// ---------------------------------------------------------------------
// Oscillator functions.  Recurrence on phi_k directly:
//   phi_{k+1} = x sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}
// with the Gaussian weight absorbed into phi_0 = pi^{-1/4} e^{-x^2/2}.
// For large |x| that start underflows, so the iteration carries a separate
// log-scale: values are mantissa * e^{logscale}, renormalized whenever the
// mantissa pair leaves [1e-100, 1e+100].  The final exponential may flush
// to zero when the true value is below the double range; that is the
// correct rounded answer.
// ---------------------------------------------------------------------
namespace {

struct ScaledPair {
    double a;         // phi_{k-1} mantissa
    double b;         // phi_k   mantissa
    double logscale;  // common log scale
};

inline void renorm(ScaledPair& s) {
    double m = std::max(std::abs(s.a), std::abs(s.b));
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
        s.a /= m;
        s.b /= m;
        s.logscale += std::log(m);
    }
}

// mantissa * e^{ls} without losing values whose product is representable
// even though e^{ls} alone underflows (ls slightly below log(DBL_MIN) with
// a large mantissa): apply the exponential in two halves.
inline double apply_scale(double mantissa, double ls) {
    if (ls > -700.0) return mantissa * std::exp(ls);
    double h = std::exp(0.5 * ls);
    return (mantissa * h) * h;
}

void check_hermite_args(std::size_t n_max, double x) {
    if (n_max == 0 || n_max > 5000) {
        throw std::domain_error("hermite_wavefunctions: need 0 < n_max <= 5000");
    }
    if (!std::isfinite(x)) {
        throw std::domain_error("hermite_wavefunctions: x must be finite");
    }
}

}  // namespace

std::vector<double> hermite_wavefunctions(std::size_t n_max, double x) {
    check_hermite_args(n_max, x);
    std::vector<double> out(n_max);
    // log of phi_0 = pi^{-1/4} e^{-x^2/2}
    ScaledPair s{0.0, 1.0, -0.5 * x * x - 0.25 * std::log(M_PI)};
    out[0] = apply_scale(s.b, s.logscale);
    for (std::size_t k = 0; k + 1 < n_max; ++k) {
        double next = x * std::sqrt(2.0 / (k + 1.0)) * s.b -
                      std::sqrt(k / (k + 1.0)) * s.a;
        s.a = s.b;
        s.b = next;
        renorm(s);
        double v = apply_scale(s.b, s.logscale);
        if (!std::isfinite(v)) {
            throw std::overflow_error("hermite_wavefunctions: overflow");
        }
        out[k + 1] = v;
    }
    return out;
}

void hermite_pair(std::size_t n, double x, double& phi_nm1, double& phi_n) {
    check_hermite_args(n + 1, x);
    ScaledPair s{0.0, 1.0, -0.5 * x * x - 0.25 * std::log(M_PI)};
    for (std::size_t k = 0; k < n; ++k) {
        double next = x * std::sqrt(2.0 / (k + 1.0)) * s.b -
                      std::sqrt(k / (k + 1.0)) * s.a;
        s.a = s.b;
        s.b = next;
        renorm(s);
    }
    phi_nm1 = apply_scale(s.a, s.logscale);
    phi_n = apply_scale(s.b, s.logscale);
}

}  // namespace airydet::special_fn
