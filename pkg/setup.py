"""Build script for the optional compiled kernel.

The package works without the extension (a pure-Python twin of the kernel is
selected at import time); set PLANETREE_PURE=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PLANETREE_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("planetree._kernels", ["src/planetree/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
