import os
from setuptools import setup

ext_modules = []
if os.environ.get("TOPOTYPE_COMPILE") == "1":
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["topotype/_kernels.py"],
        annotate=True,
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
