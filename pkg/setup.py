"""Build script: compiles the optional C kernel extension.

The package is fully functional without the extension (a numpy/python lane is
selected at import time), so failure to build it is not fatal: set
ZPFLOW_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("ZPFLOW_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("zpflow._ck", ["src/zpflow/_ck.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
