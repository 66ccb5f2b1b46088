"""Builds the optional Cython kernels; the package works without them."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("QUADTORS_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(["src/quadtors/_kernels.pyx"], language_level=3, quiet=True)
    except ImportError:
        pass

setup(ext_modules=ext_modules)
