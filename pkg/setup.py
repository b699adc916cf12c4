"""Build script: compiles the optional speedup extension.

The package is fully functional without the extension; kernels fall back to
pure Python (see curvekit.kernels).  Any compiler failure is therefore
non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/curvekit/_speedups.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - environment dependent
    print(f"curvekit: skipping compiled kernels ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
