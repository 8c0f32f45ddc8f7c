from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("simsep._core", sources=["src/simsep/_core.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Pure-python fallback (simsep._core_py) is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
