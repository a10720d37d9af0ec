import os

from setuptools import Extension, setup

# The compiled series kernel is optional: when Cython is unavailable (or
# CONEDIAG_SKIP_EXT=1), the package installs pure-Python and selects the
# fallback kernel at import time.
ext_modules = []
if os.environ.get("CONEDIAG_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "conediag._serieskernel",
                    ["src/conediag/_serieskernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
