"""Build script.

The package works without the compiled kernel (a pure-Python twin is
selected at import time), so the extension build is best-effort: set
AVGSAT_NO_EXTENSION=1 to skip it, and any compiler failure degrades to
a pure-Python install instead of aborting.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: extension build skipped ({exc}); using pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); using pure-Python kernel")


def extensions():
    if os.environ.get("AVGSAT_NO_EXTENSION"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; using pure-Python kernel")
        return []
    ext = Extension(
        "avgsat._kernel._core",
        ["src/avgsat/_kernel/_core.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
