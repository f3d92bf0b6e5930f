"""Build hook for the optional compiled kernel.

The package is pure Python; the phased-sum inner loop additionally ships as a
Cython extension.  If Cython or a C compiler is missing the build falls back
to the pure implementation selected at import time, so the extension is
marked optional.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext = Extension(
        "localtype._phasedsum",
        ["src/localtype/_phasedsum.pyx"],
        extra_compile_args=["-O2"],
        optional=True,
    )
    ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
