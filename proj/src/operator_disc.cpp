#include "airydet/operator_disc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "airydet/special_fn.hpp"

namespace airydet::operator_disc {

namespace {
constexpr double DECAY_EPS = 1e-14;  // threshold defining decay_scale
constexpr double DIAG_DELTA = 1e-6;
}  // namespace

SymbolFunction gaussian_symbol(double t, double shift) {
    if (std::abs(t) >= 1.0) {
        throw std::invalid_argument("gaussian_symbol: need |t| < 1");
    }
    SymbolFunction s;
    s.eval = [t, shift](double x) {
        double u = x + shift;
        return t * std::exp(-u * u);
    };
    // |t| e^{-(x+shift)^2} < eps  outside  |x| > sqrt(log(|t|/eps)) + |shift|
    s.decay_scale =
        (t == 0.0) ? 1.0
                   : std::sqrt(std::log(std::abs(t) / DECAY_EPS)) +
                         std::abs(shift);
    s.sup_norm_neg = std::abs(t);  // the bump center -shift is <= 0
    s.admissible = true;           // 1 + f >= 1 - |t| > 0 everywhere
    s.family = "gauss";
    s.amplitude = t;
    s.shift = shift;
    return s;
}

SymbolFunction zero_symbol() {
    SymbolFunction s;
    s.eval = [](double) { return 0.0; };
    s.decay_scale = 1.0;
    s.sup_norm_neg = 0.0;
    s.admissible = true;
    s.family = "zero";
    return s;
}

SymbolFunction scaled_log_symbol(const SymbolFunction& base, double t) {
    SymbolFunction s;
    auto be = base.eval;
    s.eval = [be, t](double x) { return std::expm1(t * std::log1p(be(x))); };
    s.decay_scale = base.decay_scale;  // same support up to O(eps)
    // sup bound: |e^{t log(1+f)} - 1| <= e^{|t| |log(1-sup)|} - 1
    s.sup_norm_neg = std::expm1(std::abs(t) *
                                std::abs(std::log1p(-base.sup_norm_neg)));
    s.admissible = base.admissible;
    s.family = "powlog";
    s.amplitude = t;
    s.shift = base.shift;
    return s;
}

std::vector<SymbolFunction> canonical_symbols() {
    std::vector<SymbolFunction> out;
    for (double shift : {0.0, 1.0}) {
        for (double t : {-0.5, -0.25, 0.25, 0.5}) {
            out.push_back(gaussian_symbol(t, shift));
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// Gauss-Legendre rule by Newton iteration on P_m (three-term recurrence);
// standard Golub-Welsch-free construction, ~1e-15 node accuracy.
// ---------------------------------------------------------------------
void gauss_legendre(std::size_t m, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.resize(m);
    weights.resize(m);
    for (std::size_t j = 0; j < (m + 1) / 2; ++j) {
        double x = std::cos(std::numbers::pi * (j + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[j] = -x;
        nodes[m - 1 - j] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[j] = w;
        weights[m - 1 - j] = w;
    }
}

namespace {

void append_panel(QuadratureGrid& g, double lo, double hi, std::size_t m) {
    std::vector<double> x, w;
    gauss_legendre(m, x, w);
    double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < m; ++j) {
        g.nodes.push_back(c + h * x[j]);
        g.weights.push_back(h * w[j]);
    }
}

// Per-panel node demand: the Airy kernel oscillates at ~sqrt(|x|) rad/unit
// on the negative axis, so a panel needs ~freq*len nodes to stay inside
// GL's resolved regime, plus a flat smoothness budget.
std::size_t panel_demand(double lo, double hi) {
    double freq = std::sqrt(std::max(0.0, -lo));
    return static_cast<std::size_t>(std::ceil(freq * (hi - lo))) + 14;
}

}  // namespace

QuadratureGrid build_grid(Interval window, std::size_t n, Rule rule) {
    if (!(window.b > window.a) || !std::isfinite(window.a) ||
        !std::isfinite(window.b)) {
        throw std::invalid_argument("build_grid: invalid window");
    }
    if (n < 2) {
        throw std::invalid_argument("build_grid: need n >= 2");
    }
    QuadratureGrid g;
    g.window = window;
    if (rule == Rule::gauss_legendre) {
        append_panel(g, window.a, window.b, n);
        return g;
    }
    std::size_t npan = static_cast<std::size_t>(
        std::ceil((window.b - window.a) / 2.0));
    std::vector<double> edges(npan + 1);
    for (std::size_t i = 0; i <= npan; ++i) {
        edges[i] = window.a + (window.b - window.a) * i / npan;
    }
    // apportion n over panels proportionally to demand, minimum 4 each
    std::vector<double> demand(npan);
    double total = 0.0;
    for (std::size_t i = 0; i < npan; ++i) {
        demand[i] = static_cast<double>(panel_demand(edges[i], edges[i + 1]));
        total += demand[i];
    }
    std::vector<std::size_t> m(npan);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < npan; ++i) {
        m[i] = std::max<std::size_t>(
            4, static_cast<std::size_t>(std::floor(n * demand[i] / total)));
        assigned += m[i];
    }
    // hand out any remainder to the highest-demand panels, deterministically
    std::size_t i = 0;
    while (assigned < n) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < npan; ++j) {
            if (demand[j] / m[j] > demand[best] / m[best]) best = j;
        }
        ++m[best];
        ++assigned;
        if (++i > n) break;  // defensive; cannot loop forever
    }
    for (std::size_t p = 0; p < npan; ++p) {
        append_panel(g, edges[p], edges[p + 1], m[p]);
    }
    return g;
}

std::size_t default_node_count(Interval window) {
    std::size_t npan =
        static_cast<std::size_t>(std::ceil((window.b - window.a) / 2.0));
    std::size_t n = 0;
    for (std::size_t i = 0; i < npan; ++i) {
        double lo =
            window.a + (window.b - window.a) * static_cast<double>(i) / npan;
        double hi = window.a +
                    (window.b - window.a) * static_cast<double>(i + 1) / npan;
        n += panel_demand(lo, hi);
    }
    return n;
}

QuadratureGrid default_airy_grid(const SymbolFunction& f, double alpha,
                                 std::size_t refine) {
    double lneg = alpha * f.decay_scale + 10.0;
    Interval w{-lneg, 8.0};
    return build_grid(w, default_node_count(w) * refine, Rule::composite_gl);
}

DiscretizedOperator discretize_airy_operator(const SymbolFunction& f,
                                             double alpha,
                                             const QuadratureGrid& grid) {
    if (!f.admissible) {
        throw std::invalid_argument("discretize_airy_operator: symbol inadmissible");
    }
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("discretize_airy_operator: alpha > 0 required");
    }
    if (-grid.window.a < alpha * f.decay_scale) {
        throw std::invalid_argument(
            "discretize_airy_operator: window misses the symbol support "
            "(need left edge <= -alpha * decay_scale)");
    }
    const auto& x = grid.nodes;
    const auto& w = grid.weights;
    const std::size_t n = x.size();

    std::vector<double> ai(n), aip(n), sw(n), fv(n), diag(n);
    bool nonneg = true;
    for (std::size_t i = 0; i < n; ++i) {
        auto a = special_fn::airy_both(x[i]);
        ai[i] = a.ai;
        aip[i] = a.ai_prime;
        sw[i] = std::sqrt(w[i]);
        fv[i] = f.eval(x[i] / alpha);
        if (fv[i] < 0.0) nonneg = false;
        diag[i] = a.ai_prime * a.ai_prime - x[i] * a.ai * a.ai;
    }

    DiscretizedOperator op;
    op.grid = grid;
    op.alpha = alpha;
    op.kind = OperatorKind::airy;
    op.symbol_nonneg = nonneg;
    op.matrix.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double k;
            if (std::abs(x[i] - x[j]) < DIAG_DELTA) {
                if (i == j) {
                    k = diag[i];
                } else {
                    double mm = 0.5 * (x[i] + x[j]);
                    auto am = special_fn::airy_both(mm);
                    k = am.ai_prime * am.ai_prime - mm * am.ai * am.ai;
                }
            } else {
                k = (ai[i] * aip[j] - ai[j] * aip[i]) / (x[i] - x[j]);
            }
            op.matrix(i, j) = sw[i] * fv[i] * k * sw[j];
        }
    }
    return op;
}

DiscretizedOperator discrete_airy_transform(const QuadratureGrid& grid) {
    if (std::abs(grid.window.a + grid.window.b) > 1e-12) {
        throw std::invalid_argument(
            "discrete_airy_transform: window must be symmetric");
    }
    const auto& x = grid.nodes;
    const auto& w = grid.weights;
    const std::size_t n = x.size();
    DiscretizedOperator op;
    op.grid = grid;
    op.kind = OperatorKind::airy_transform;
    op.matrix.resize(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double swi = std::sqrt(w[i]);
        for (std::size_t j = i; j < n; ++j) {
            double v = swi * special_fn::airy_ai(x[i] + x[j]) * std::sqrt(w[j]);
            op.matrix(i, j) = v;
            op.matrix(j, i) = v;
        }
    }
    return op;
}

namespace {

// Shared y-rule for the cosine-transform kernel: GL resolving the fastest
// phase u_max * y over [0, Y].
void wh_y_rule(double y_decay, double u_max, std::vector<double>& y,
               std::vector<double>& wy) {
    std::size_t ny = std::max<std::size_t>(
        256, static_cast<std::size_t>(std::ceil(0.5 * u_max * y_decay)) + 64);
    gauss_legendre(ny, y, wy);
    for (std::size_t q = 0; q < ny; ++q) {
        y[q] = 0.5 * y_decay * (y[q] + 1.0);
        wy[q] *= 0.5 * y_decay;
    }
}

}  // namespace

DiscretizedOperator discretize_wiener_hopf(
    const std::function<double(double)>& g, double y_decay, double half_length,
    std::size_t n, bool uniform) {
    if (!(half_length > 0.0) || !(y_decay > 0.0)) {
        throw std::invalid_argument("discretize_wiener_hopf: bad geometry");
    }
    if (std::abs(g(y_decay)) > 1e-12) {
        throw std::invalid_argument(
            "discretize_wiener_hopf: symbol has not decayed at y_decay");
    }
    DiscretizedOperator op;
    op.kind = OperatorKind::wiener_hopf;

    std::vector<double> y, wy;
    wh_y_rule(y_decay, half_length, y, wy);
    const std::size_t ny = y.size();
    std::vector<double> gq(ny);
    for (std::size_t q = 0; q < ny; ++q) {
        gq[q] = wy[q] * g(y[q]) / std::numbers::pi;
    }

    if (uniform) {
        // midpoint rule; k evaluated once per distinct difference so the
        // matrix is Toeplitz bit-for-bit
        double h = half_length / static_cast<double>(n);
        op.grid.window = {0.0, half_length};
        op.grid.nodes.resize(n);
        op.grid.weights.assign(n, h);
        for (std::size_t i = 0; i < n; ++i) {
            op.grid.nodes[i] = (i + 0.5) * h;
        }
        std::vector<double> ktab(n);
        for (std::size_t m = 0; m < n; ++m) {
            double u = m * h, s = 0.0;
            for (std::size_t q = 0; q < ny; ++q) s += gq[q] * std::cos(u * y[q]);
            ktab[m] = s;
        }
        op.matrix.resize(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                op.matrix(i, j) = h * ktab[i > j ? i - j : j - i];
            }
        }
        return op;
    }

    op.grid = build_grid({0.0, half_length}, n, Rule::composite_gl);
    const auto& x = op.grid.nodes;
    const std::size_t nn = x.size();
    // Separable assembly:
    //   k(x_i - x_j) = sum_q a_q [cos(x_i y_q) cos(x_j y_q)
    //                             + sin(x_i y_q) sin(x_j y_q)]
    // so W = sqrt(w) (C A C^T + S A S^T) sqrt(w) as two rank-ny products —
    // exact in the y-rule, no kernel interpolation anywhere.
    Eigen::MatrixXd C(nn, ny), S(nn, ny);
    for (std::size_t i = 0; i < nn; ++i) {
        for (std::size_t q = 0; q < ny; ++q) {
            double ph = x[i] * y[q];
            C(i, q) = std::cos(ph);
            S(i, q) = std::sin(ph);
        }
    }
    Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(gq.data(), ny);
    Eigen::MatrixXd W = C * a.asDiagonal() * C.transpose() +
                        S * a.asDiagonal() * S.transpose();
    Eigen::VectorXd sw(nn);
    for (std::size_t i = 0; i < nn; ++i) sw(i) = std::sqrt(op.grid.weights[i]);
    op.matrix = sw.asDiagonal() * W * sw.asDiagonal();
    return op;
}

double wiener_hopf_kernel_at_zero(const std::function<double(double)>& g,
                                  double y_decay) {
    std::vector<double> y, wy;
    wh_y_rule(y_decay, 0.0, y, wy);
    double s = 0.0;
    for (std::size_t q = 0; q < y.size(); ++q) s += wy[q] * g(y[q]);
    return s / std::numbers::pi;
}

}  // namespace airydet::operator_disc
