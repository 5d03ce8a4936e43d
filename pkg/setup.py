"""Build script.

The package is pure Python plus one optional C extension with the three
dynamic-programming kernels.  If Cython is unavailable or compilation
fails the install proceeds without the extension; pitchcut.kernels then
falls back to the bignum Python implementations at import time.
"""

from setuptools import Extension, setup

extensions = []
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("pitchcut._speedups", ["src/pitchcut/_speedups.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=extensions)
