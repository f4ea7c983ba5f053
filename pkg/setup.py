"""Build script: compiles the optional transfer-recursion kernel.

The package is fully functional without the extension (a numpy fallback is
selected at import time), so any compiler or Cython failure downgrades to a
pure-Python install instead of aborting.  Set OPUCKIT_NO_EXT=1 to skip the
extension build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: building the opuckit kernel extension failed "
            f"({exc!r}); falling back to the pure-Python backend.",
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if not os.environ.get("OPUCKIT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "opuckit._kernels._core",
                    ["src/opuckit/_kernels/_core.pyx"],
                    # -fcx-limited-range: skip Annex-G inf/nan fixups in
                    # complex multiplies; the recursion is renormalized, so
                    # intermediates never overflow
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        print(
            "warning: Cython not available; installing opuckit with the "
            "pure-Python kernel backend.",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules, cmdclass=cmdclass)
