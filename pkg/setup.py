"""Build hook: compile the optional Cython kernel if a toolchain is available."""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qlsmodcat/_kernel/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
