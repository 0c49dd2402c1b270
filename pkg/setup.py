"""Build script: compiles the optional denoising extension.

The package works without the extension (a numpy fallback is selected at
import time), so any Cython or C-toolchain failure downgrades to a warning
instead of aborting the install.
"""

import sys
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    if sys.platform == "win32":
        flags = ["/O2"]
    else:
        flags = ["-O3", "-fno-math-errno"]
    ext_modules = cythonize(
        [
            Extension(
                "lumenlift._kernels",
                ["src/lumenlift/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=flags,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # no Cython: pure-python install
    warnings.warn(f"building without compiled kernels: {exc}")
    ext_modules = []


class optional_build_ext(build_ext):
    # a missing or broken C toolchain must not fail the install
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
