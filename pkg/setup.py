"""Build script: compiles the optional sparse-polynomial kernel.

The package works without the extension (a pure-Python backend is selected
at import time), so a failed Cython build only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "milnorq._speedups",
                ["src/milnorq/_speedups.pyx"],
                language="c++",
                extra_compile_args=["-O2", "-std=c++11"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
