"""Build the optional compiled kernels; install stays pure Python without them."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("cellcx._ckernels", ["src/cellcx/_ckernels.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )
except Exception as exc:  # no Cython or no compiler
    print(f"cellcx: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
