"""Build script for the optional compiled selection kernel.

The package works without the extension: numasched.selection falls back to
the pure-Python kernel at import time. Building here just makes the hot
path fast.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("numasched._kernels", ["src/numasched/_kernels.pyx"])],
        language_level="3",
    )
except ImportError:
    print("Cython not available; installing with the pure-Python kernel only")


class optional_build_ext(build_ext):
    """Fall back to the pure-Python kernel if compilation fails."""

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # compiler missing, flags rejected, ...
            print(f"skipping {ext.name}: {exc}")


setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
