"""Build script: compiles the optional fast kernel when Cython is available.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so the build degrades gracefully on machines
without Cython or a C compiler.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    extension = Extension(
        "permspec._native",
        ["src/permspec/_native.pyx"],
        extra_compile_args=["-O3", "-march=native", "-ffast-math"],
        optional=True,
    )
    ext_modules = cythonize(
        [extension],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
