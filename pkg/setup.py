"""Build script.  The compiled rewrite kernel is optional: when Cython (or a C
compiler) is unavailable the package installs anyway and falls back to the
pure-Python kernel at import time."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("catcw._rewrite_c", ["src/catcw/_rewrite_c.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"catcw: skipping compiled kernel ({exc!r}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
