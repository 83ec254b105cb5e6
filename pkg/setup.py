"""Build script for the compiled sweep kernel.

The extension is optional: if Cython or a C compiler is unavailable the
install still succeeds and the package falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "entropy_outliers._sweep",
                ["src/entropy_outliers/_sweep.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
