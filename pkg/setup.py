import os

from setuptools import setup

# The compiled product kernel is optional: the package falls back to the
# pure-Python twin in _product_py when the extension is absent.  Set
# GOODBRACKETS_NO_EXT=1 to skip building it.
ext_modules = []
if os.environ.get("GOODBRACKETS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "goodbrackets._product_c",
                    ["src/goodbrackets/_product_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
