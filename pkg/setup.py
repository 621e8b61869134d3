import os

from setuptools import setup

ext_modules = []
if os.environ.get("MOCKCHAR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/mockchar/_series_cy.pyx"],
            language_level=3,
            compiler_directives={"boundscheck": False, "cdivision": True},
        )
        for ext in ext_modules:
            ext.extra_compile_args = ["-O3"]
    except ImportError:
        # No Cython available: the pure-Python backend is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
