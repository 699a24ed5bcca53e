"""Build script: compiles the optional speedup extension.

The package works without the extension (a pure-Python kernel is selected at
import time), so any failure to build it downgrades to a warning instead of
breaking the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, warn and continue otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: building the f2aut._speedups extension failed; "
            "falling back to the pure-Python kernel ({}: {})".format(
                type(exc).__name__, exc
            ),
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print(
            "warning: Cython not available; installing without the compiled kernel",
            file=sys.stderr,
        )
        return []
    from setuptools import Extension

    ext = Extension("f2aut._speedups", ["src/f2aut/_speedups.pyx"])
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
