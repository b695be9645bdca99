"""Build the optional compiled kernel module.

The package works without it: ``eigenclose._backend`` falls back to the
pure-Python implementation when the extension cannot be imported.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    ext_modules = []
else:
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "eigenclose._ckernels",
                ["src/eigenclose/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
