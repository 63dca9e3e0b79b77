"""Build script: compiles the optional minimization kernel extension.

The package works without the extension (a pure-Python twin is selected at
import time), so a missing Cython or compiler only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "eprsep._kernels",
                ["src/eprsep/_kernels.pyx"],
                # -ffp-contract=off keeps the compiled arithmetic bit-identical
                # to the pure-Python fallback (no FMA fusion).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
