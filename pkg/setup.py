"""Build hook for the optional compiled kernel backend.

The package is pure Python plus one Cython extension holding the tight
per-step loops (frame integration and transport).  The extension is marked
optional: if no compiler or Cython is available the install still succeeds
and framefield falls back to the numpy implementation at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext = Extension(
        "framefield._ckernels",
        sources=["src/framefield/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
