"""Build script: compiles the optional Cython kernel.

The package is fully functional without the extension (pure-Python twin in
bicohom._core_py); set BICOHOM_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BICOHOM_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("bicohom._core_cy", ["src/bicohom/_core_cy.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
