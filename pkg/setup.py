"""Build script: compiles the optional GF(2) elimination extension.

The extension (`cosetstore.gf2._core`) accelerates the Gaussian
elimination hot loop.  If Cython or a C compiler is unavailable the
package installs anyway and falls back to the numpy kernel at import.
"""

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
        import numpy as np
    except ImportError:
        return []
    exts = [
        Extension(
            "cosetstore.gf2._core",
            sources=["src/cosetstore/gf2/_core.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )
    ]
    return cythonize(
        exts,
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    )


setup(ext_modules=extensions())
