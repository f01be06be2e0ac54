"""Build script for the optional Cython kernels.

The extension is optional: if Cython or a C compiler is missing the package
installs without it and ``qmatrix.kernels`` falls back to the numpy versions.
"""
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: Cython kernels not built ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        if self.compiler.compiler_type == "msvc":
            ext.extra_compile_args = ["/O2"]
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


def ext_modules():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "qmatrix.kernels._ckernels",
        ["src/qmatrix/kernels/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        # limited-range complex products skip the C99 NaN/inf recovery path;
        # inputs are validated finite before they reach the kernels
        extra_compile_args=["-O3", "-fcx-limited-range"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize(
        [ext],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )


setup(ext_modules=ext_modules(), cmdclass={"build_ext": OptionalBuildExt})
