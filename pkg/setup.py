"""Build script: compiles the optional enumeration kernel.

The package is pure Python except for ``gramcalc._statcore``, a small Cython
extension that speeds up exhaustive permutation enumeration.  If Cython or a
C compiler is unavailable the build degrades to the pure-Python kernel; the
package works either way.

    python setup.py build_ext --inplace   # drop the .so next to the sources
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise warn and continue."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: could not build the enumeration kernel ({exc}); "
            "falling back to the pure-Python kernel"
        )


ext_modules = []
if not os.environ.get("GRAMCALC_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("gramcalc._statcore", ["src/gramcalc/_statcore.pyx"])],
            language_level=3,
        )
    except ImportError:
        print("WARNING: Cython not available; building without the enumeration kernel")

setup(
    ext_modules=ext_modules,
    cmdclass={"build_ext": optional_build_ext},
)
