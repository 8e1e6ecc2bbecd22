"""Build script for the compiled extension.

The C++ sources are shared with the CMake build; this compiles them once
more into the `airydet._airydet` module so the package is pip-installable
without CMake.  Metadata lives in pyproject.toml.
"""

import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    env = os.environ.get("EIGEN3_INCLUDE_DIR")
    candidates = [env] if env else []
    candidates += ["/usr/include/eigen3", "/usr/local/include/eigen3"]
    for path in candidates:
        if path and os.path.isdir(os.path.join(path, "Eigen")):
            return path
    raise RuntimeError(
        "Eigen3 headers not found; set EIGEN3_INCLUDE_DIR to the directory "
        "containing Eigen/"
    )


ext = Pybind11Extension(
    "airydet._airydet",
    sources=[
        "bindings/airydet_py.cpp",
        "src/special_fn.cpp",
        "src/kernels.cpp",
        "src/operator_disc.cpp",
        "src/detasym.cpp",
        "src/rmt_mc.cpp",
        "src/cli_io.cpp",
    ],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
    # keep IEEE semantics: the compensated summation in the special-function
    # code is not -ffast-math safe, and determinism tests rely on strict FP
    extra_compile_args=["-O2", "-ffp-contract=off"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
