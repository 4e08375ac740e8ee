"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), so any build failure here degrades to a source-only
install instead of aborting. Set VTSCREEN_NO_EXT=1 to skip the extension
deliberately.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("VTSCREEN_NO_EXT"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "vtscreen.kernels._fast",
        ["src/vtscreen/kernels/_fast.pyx"],
        include_dirs=[numpy.get_include()],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=_extensions())
