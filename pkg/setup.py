"""Builds the optional Cython kernel; without Cython the pure-Python kernel is used."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("PANOPTICON_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/panopticon/kernel/_ckernel.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
