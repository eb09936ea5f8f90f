import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("RADRAT_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "radrat._modlinalg",
                    ["src/radrat/_modlinalg.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # No Cython: install with the pure-Python kernel only.
        ext_modules = []

setup(ext_modules=ext_modules)
