"""Build script: compiles the optional fraction-free rank kernel.

The package is pure Python except for ``moment_fiber._fastrank``, a small
Cython extension accelerating integer Bareiss elimination.  The extension is
strictly optional: if Cython or a C compiler is unavailable the build falls
back to a pure-Python install and ``moment_fiber.exactlin`` selects the
pure kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/moment_fiber/_fastrank.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
