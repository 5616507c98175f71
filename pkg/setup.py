"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (pure-Python kernels
are selected at import time when qinv3._core is missing), so a failed
compile downgrades to a warning instead of aborting the install.
"""

import sys

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [Extension("qinv3._core", ["src/qinv3/_core.pyx"])],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"qinv3: skipping compiled kernels ({exc})", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
