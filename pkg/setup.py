from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension("slipknot._kernels._census", ["src/slipknot/_kernels/_census.pyx"],
              extra_compile_args=["-O3"]),
    Extension("slipknot._kernels._bracket", ["src/slipknot/_kernels/_bracket.pyx"],
              extra_compile_args=["-O3"]),
]

setup(ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}))
