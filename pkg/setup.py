"""Build hook for the optional compiled folding kernel.

The package is pure Python plus one accelerator; when Cython (or a C
compiler) is unavailable the build silently falls back to the
pure-Python kernel selected in opuntia.folding.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("opuntia._foldcore", ["src/opuntia/_foldcore.pyx"],
                   optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
