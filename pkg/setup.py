"""Builds the optional Cython kernels; the package works without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("fracalc._ckernels", ["src/fracalc/_ckernels.pyx"], libraries=["m"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
