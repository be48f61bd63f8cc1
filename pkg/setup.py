import os

from setuptools import setup
from setuptools.extension import Extension


def ext_modules():
    if os.environ.get("SIGCHOOSE_PURE_PYTHON"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    extensions = [
        Extension(
            "sigchoose._ckernels",
            ["src/sigchoose/_ckernels.pyx"],
            extra_compile_args=["-O3"],
        )
    ]
    return cythonize(extensions, compiler_directives={"language_level": "3"})


setup(ext_modules=ext_modules())
