"""Build script: compiles the optional polynomial speedup extension.

The package is fully functional without the extension; polys.py falls back
to the pure-Python kernels if the import fails.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("almostalg._speedups", ["src/almostalg/_speedups.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environments without Cython
    print(f"almostalg: building without compiled speedups ({exc})")

setup(ext_modules=ext_modules)
