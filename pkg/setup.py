"""Build hooks for the optional compiled kernel.

The extension is a speedup only; when Cython or a C compiler is
unavailable the install proceeds and the package falls back to the
pure-Python kernel backend at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from setuptools.errors import CCompilerError, ExecError, PlatformError
except ImportError:  # setuptools < 59
    from distutils.errors import (  # type: ignore[no-redef]
        CCompilerError,
        DistutilsExecError as ExecError,
        DistutilsPlatformError as PlatformError,
    )

_BUILD_ERRORS = (CCompilerError, ExecError, PlatformError, FileNotFoundError)


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except _BUILD_ERRORS as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except _BUILD_ERRORS as exc:
            self._skip(exc)

    def _skip(self, exc):
        print(f"warning: compiled kernel skipped ({exc}); "
              "using the pure-Python backend")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; compiled kernel skipped")
        return []
    return cythonize(
        [
            Extension(
                "gossval.kernels._core",
                ["src/gossval/kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": optional_build_ext})
