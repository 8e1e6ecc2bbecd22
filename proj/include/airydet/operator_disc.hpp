#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace airydet::operator_disc {

// The operator's symbol: a smooth rapidly-decaying test function plus the
// admissibility metadata the determinant asymptotics require (1 + f must
// stay away from zero on the closed negative axis).
struct SymbolFunction {
    std::function<double(double)> eval;
    double decay_scale = 0.0;   // |f(x)| < 1e-14 for |x| > decay_scale
    double sup_norm_neg = 0.0;  // sup of |f| on R^-
    bool admissible = false;
    // family echo for configuration/serialization
    std::string family = "zero";
    double amplitude = 0.0;
    double shift = 0.0;
};

// f(x) = t * exp(-(x + shift)^2); admissible for |t| < 1.
SymbolFunction gaussian_symbol(double t, double shift = 0.0);
SymbolFunction zero_symbol();
// 1 + f_t = e^{t log(1 + f)}: the exponential-interpolation family used by
// the c2 scaling property (c2 is quadratic in t along it).
SymbolFunction scaled_log_symbol(const SymbolFunction& base, double t);
// The eight-member test family: t in {-0.5,-0.25,0.25,0.5}, shift in {0,1}.
std::vector<SymbolFunction> canonical_symbols();

struct Interval {
    double a;
    double b;
};

struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    Interval window{0.0, 0.0};
};

enum class Rule { gauss_legendre, composite_gl };

// Gauss-Legendre nodes/weights on [-1, 1]; exposed for reuse in the
// quadrature oracles of the test suite.
void gauss_legendre(std::size_t m, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Quadrature grid on the window: a single mapped GL rule, or a composite
// rule over panels of length <= 2 with nodes apportioned proportionally to
// the local Airy oscillation frequency sqrt(max(0, -x)).
QuadratureGrid build_grid(Interval window, std::size_t n, Rule rule);

enum class OperatorKind { airy, wiener_hopf, airy_transform };

struct DiscretizedOperator {
    Eigen::MatrixXd matrix;  // sqrt(w)-symmetrized weighted kernel
    QuadratureGrid grid;
    double alpha = 1.0;
    OperatorKind kind = OperatorKind::airy;
    bool symbol_nonneg = false;  // f >= 0 (operator provably positive)
};

// Total node count the default policy assigns to a window: panels of
// length <= 2, ceil(freq * len) + 14 nodes per panel with freq =
// sqrt(max(0, -left)), the local kernel oscillation rate.
std::size_t default_node_count(Interval window);

// Default discretization policy for A_alpha(f): window
// [-(alpha * decay_scale + 10), +8], composite-GL panels, node budget
// default_node_count(window) * refine.  Returns the grid it chose.
QuadratureGrid default_airy_grid(const SymbolFunction& f, double alpha,
                                 std::size_t refine = 1);

// Nystrom matrix M_ij = sqrt(w_i) f(x_i/alpha) K_Ai(x_i, x_j) sqrt(w_j).
// det(I + M) approximates the Fredholm determinant det(I + A_alpha(f)).
// Throws std::invalid_argument if f is inadmissible or the window is
// narrower than alpha * decay_scale on the left.
DiscretizedOperator discretize_airy_operator(const SymbolFunction& f,
                                             double alpha,
                                             const QuadratureGrid& grid);

// T_ij = sqrt(w_i) Ai(x_i + x_j) sqrt(w_j) on a symmetric window; the
// discrete counterpart of the self-inverse Airy transform.
DiscretizedOperator discrete_airy_transform(const QuadratureGrid& grid);

// Finite Wiener-Hopf operator on [0, T] for an even symbol given through
// g(y) on y >= 0 (decaying beyond y_decay):
//   W_ij = sqrt(w_i) k(x_i - x_j) sqrt(w_j),
//   k(u) = (1/pi) int_0^{y_decay} cos(u y) g(y) dy.
// uniform=true uses the midpoint rule (the matrix is then Toeplitz
// bit-for-bit); otherwise composite GL panels.
DiscretizedOperator discretize_wiener_hopf(
    const std::function<double(double)>& g, double y_decay, double half_length,
    std::size_t n, bool uniform = false);

// k(0)-type moment of the same symbol: (1/pi) int_0^{y_decay} g(y) dy.
double wiener_hopf_kernel_at_zero(const std::function<double(double)>& g,
                                  double y_decay);

}  // namespace airydet::operator_disc
