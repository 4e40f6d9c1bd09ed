"""Build script: compiles the segment-field kernel when Cython and a C
compiler are available, otherwise installs pure-Python only (the package
falls back to the numpy kernel at import time)."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/atomchip/_kernels/_fastseg.pyx"],
        language_level="3",
    )
    include_dirs = [numpy.get_include()]
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"atomchip: skipping compiled kernel ({exc!r}); numpy fallback will be used")
    include_dirs = []

setup(
    ext_modules=ext_modules,
    include_dirs=include_dirs,
)
