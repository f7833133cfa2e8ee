"""Build the optional compiled kernels; without Cython or a C compiler the package stays pure Python."""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as err:  # no compiler, missing headers, ...
            print(f"warning: compiled kernels not built ({err}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as err:
            print(f"warning: could not build {ext.name} ({err}); using pure Python")


ext_modules = []
if os.environ.get("TMODPURE_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("tmodpure._kernels", ["src/tmodpure/_kernels.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
