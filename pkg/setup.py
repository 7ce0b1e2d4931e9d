"""Build the optional compiled point-counting kernel.

The package works without the extension (a pure-Python fallback is selected
at import time); set NONELLIPTIC_NO_EXT=1 to force a pure-Python install.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("NONELLIPTIC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "nonelliptic._counting_fast",
                    ["src/nonelliptic/_counting_fast.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython available: install pure-Python only.
        ext_modules = []

setup(ext_modules=ext_modules)
