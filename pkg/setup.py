"""Build script: compiles the optional merge-simulation kernel.

The extension is marked optional so that environments without a C
compiler still get a working install; opennodes.kernels falls back to
the pure-Python twin at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension("opennodes._kernels", ["src/opennodes/_kernels.pyx"],
                   optional=True)],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
