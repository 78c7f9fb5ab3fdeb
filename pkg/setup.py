import os

from setuptools import Extension, setup

# The compiled kernel is optional: without Cython (or with GFDC_NO_EXT=1)
# the package installs pure-Python and gfdc.density falls back at import.
ext_modules = []
if os.environ.get("GFDC_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "gfdc._core",
                    sources=["src/gfdc/_core.pyx"],
                    # -ffp-contract=off: the pure-Python fallback must stay
                    # bit-identical, so FMA contraction is disabled.
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
