import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SALIMITS_DISABLE_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "salimits._kernels._core",
                    ["src/salimits/_kernels/_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython/numpy at build time: install the pure-Python backend only.
        ext_modules = []

setup(ext_modules=ext_modules)
