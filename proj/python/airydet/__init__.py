"""Airy-operator determinants, their asymptotic constants, and GUE edge
statistics.

Thin re-export of the compiled module.  The heavy lifting (kernel
evaluation, Nystrom discretization, LU determinants, Monte Carlo) lives in
C++; see the `airydet` CLI for the file-producing front end.
"""

try:
    # installed layout: the extension sits inside the package
    from ._airydet import (
        __version__,
        airy_ai,
        airy_ai_prime,
        airy_kernel,
        asymptotic_constants,
        char_function_log,
        default_seed,
        edge_scaled_kernel,
        log_det,
        run_mc,
        wiener_hopf_c2,
    )
except ImportError:  # pragma: no cover
    # build-tree layout: the extension is on PYTHONPATH next to the build
    from _airydet import (
        __version__,
        airy_ai,
        airy_ai_prime,
        airy_kernel,
        asymptotic_constants,
        char_function_log,
        default_seed,
        edge_scaled_kernel,
        log_det,
        run_mc,
        wiener_hopf_c2,
    )

__all__ = [
    "__version__",
    "airy_ai",
    "airy_ai_prime",
    "airy_kernel",
    "asymptotic_constants",
    "char_function_log",
    "default_seed",
    "edge_scaled_kernel",
    "log_det",
    "run_mc",
    "wiener_hopf_c2",
]
